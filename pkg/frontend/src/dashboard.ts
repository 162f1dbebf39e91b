import { ApiClient, ApiError, NetworkFailure } from "./api";
import { formatYears, renderCurvesChart, renderSweepChart } from "./chart";
import { debounce, type Debounced } from "./debounce";
import { LatestWins } from "./latest";
import {
  activePreset,
  applyPreset,
  clamp,
  clampCount,
  initialState,
  optionRef,
  scenarioBody,
  sweepValues,
  type PresetName,
  type UiState,
} from "./state";
import type { AnalyzeResponse, CatalogResponse, SweepResponse } from "./types";

export interface DashboardOptions {
  client?: ApiClient;
  debounceMs?: number;
  sweepPoints?: number;
  curveSamples?: number;
}

const CUSTOM = "__custom__";

export class Dashboard {
  readonly state: UiState = initialState();
  private readonly client: ApiClient;
  private readonly sweepPoints: number;
  private readonly curveSamples: number;
  private readonly analyzeSeq = new LatestWins();
  private readonly sweepSeq = new LatestWins();
  private readonly scheduleRefetch: Debounced<[]>;
  private catalog: CatalogResponse | null = null;
  private lastSweep: SweepResponse | null = null;

  constructor(
    private readonly root: HTMLElement,
    options: DashboardOptions = {},
  ) {
    this.client = options.client ?? new ApiClient();
    this.sweepPoints = options.sweepPoints ?? 20;
    this.curveSamples = options.curveSamples ?? 120;
    this.scheduleRefetch = debounce(() => this.refetch(), options.debounceMs ?? 150);
    this.renderShell();
    this.bind();
    void this.start();
  }

  private q<T extends HTMLElement>(selector: string): T {
    const el = this.root.querySelector<T>(selector);
    if (!el) throw new Error(`missing element ${selector}`);
    return el;
  }

  private renderShell(): void {
    this.root.innerHTML = `
      <header class="top">
        <h1>Buy new or refresh?</h1>
        <p class="sub">lifecycle carbon payback for FPGA accelerators; every number on
        this page comes from the analysis service</p>
      </header>
      <div class="banner hidden" data-testid="network-banner">
        <span class="banner-text"></span>
        <button type="button" data-testid="retry">retry</button>
      </div>
      <main class="layout">
        <section class="controls" aria-label="scenario controls">
          <fieldset class="option-picker" data-option="0">
            <legend>option 0 (incumbent)</legend>
            <select data-testid="option0-select" aria-label="option 0"></select>
            <div class="builder hidden"></div>
          </fieldset>
          <fieldset class="option-picker" data-option="1">
            <legend>option 1 (candidate)</legend>
            <select data-testid="option1-select" aria-label="option 1"></select>
            <div class="builder hidden"></div>
          </fieldset>

          <fieldset>
            <legend>duty cycle</legend>
            <div class="preset-row" role="group" aria-label="duty presets">
              <button type="button" data-preset="case1">case 1</button>
              <button type="button" data-preset="case2">case 2</button>
              <button type="button" data-preset="case3">case 3</button>
            </div>
            <label>sleep share
              <input type="range" data-testid="r-sleep" min="0" max="0.99" step="0.01">
              <output data-for="r-sleep"></output>
            </label>
            <label>active share of awake time
              <input type="range" data-testid="r-active" min="0" max="1" step="0.01">
              <output data-for="r-active"></output>
            </label>
          </fieldset>

          <fieldset>
            <legend>grid</legend>
            <label>renewable fraction
              <input type="range" data-testid="renewables" min="0" max="1" step="0.01">
              <output data-for="renewables"></output>
            </label>
            <label>base intensity (gCO2e/kWh)
              <input type="number" data-testid="grid-base" min="1" step="10">
            </label>
          </fieldset>

          <fieldset>
            <legend>comparison</legend>
            <label><input type="radio" name="mode" value="equal-time" data-testid="mode-equal-time"> equal time</label>
            <label><input type="radio" name="mode" value="equal-work" data-testid="mode-equal-work"> equal work</label>
          </fieldset>
        </section>

        <section class="results" aria-live="polite">
          <div class="error hidden" data-testid="error-box"></div>
          <div class="callouts">
            <div class="callout">
              <span class="k">indifference time</span>
              <strong data-testid="ti-callout">&ndash;</strong>
            </div>
            <div class="callout">
              <span class="k">break-even time</span>
              <strong data-testid="tb-callout">&ndash;</strong>
            </div>
            <div class="callout adjusted hidden" data-testid="adjusted-duty"></div>
          </div>
          <div class="chart" data-testid="curves-chart"></div>
          <h2>indifference time vs renewable fraction</h2>
          <div class="chart" data-testid="sweep-chart"></div>
        </section>
      </main>`;
  }

  private bind(): void {
    for (const button of this.root.querySelectorAll<HTMLButtonElement>("[data-preset]")) {
      button.addEventListener("click", () => {
        applyPreset(this.state, button.dataset.preset as PresetName);
        this.syncControls();
        this.scheduleRefetch();
      });
    }

    const rSleep = this.q<HTMLInputElement>('[data-testid="r-sleep"]');
    rSleep.addEventListener("input", () => {
      this.state.rSleep = clamp(rSleep.valueAsNumber, 0, 0.99);
      this.syncControls();
      this.scheduleRefetch();
    });
    const rActive = this.q<HTMLInputElement>('[data-testid="r-active"]');
    rActive.addEventListener("input", () => {
      this.state.rActive = clamp(rActive.valueAsNumber, 0, 1);
      this.syncControls();
      this.scheduleRefetch();
    });

    const renewables = this.q<HTMLInputElement>('[data-testid="renewables"]');
    renewables.addEventListener("input", () => {
      this.state.renewableFraction = clamp(renewables.valueAsNumber, 0, 1);
      this.syncControls();
      // marker tracks the slider immediately; the refetch follows debounced
      this.renderSweep();
      this.scheduleRefetch();
    });

    const gridBase = this.q<HTMLInputElement>('[data-testid="grid-base"]');
    gridBase.addEventListener("input", () => {
      this.state.gridBase = clamp(gridBase.valueAsNumber, 1, 5000);
      this.scheduleRefetch();
    });

    for (const radio of this.root.querySelectorAll<HTMLInputElement>('input[name="mode"]')) {
      radio.addEventListener("change", () => {
        if (radio.checked) {
          this.state.mode = radio.value as UiState["mode"];
          this.scheduleRefetch();
        }
      });
    }

    this.bindOptionPicker(0);
    this.bindOptionPicker(1);

    this.q<HTMLButtonElement>('[data-testid="retry"]').addEventListener("click", () => {
      this.hideBanner();
      void this.start();
    });
  }

  private option(side: 0 | 1) {
    return side === 0 ? this.state.option0 : this.state.option1;
  }

  private bindOptionPicker(side: 0 | 1): void {
    const select = this.q<HTMLSelectElement>(`[data-testid="option${side}-select"]`);
    select.addEventListener("change", () => {
      const option = this.option(side);
      if (select.value === CUSTOM) {
        option.kind = "builder";
      } else {
        option.kind = "catalog";
        option.catalogId = select.value;
      }
      this.syncControls();
      this.scheduleRefetch();
    });
  }

  private renderBuilder(side: 0 | 1): void {
    const holder = this.q<HTMLElement>(`[data-option="${side}"] .builder`);
    const option = this.option(side);
    holder.classList.toggle("hidden", option.kind !== "builder");
    if (option.kind !== "builder" || !this.catalog) return;
    if (holder.childElementCount === 0) {
      const dieChoices = Object.keys(this.catalog.devices)
        .map((id) => `<option value="${id}">${id}</option>`)
        .join("");
      holder.innerHTML = `
        <label>die <select data-builder="die">${dieChoices}</select></label>
        <label>count <input type="number" data-builder="count" min="1" max="8" step="1"></label>
        <label>link efficiency
          <input type="range" data-builder="efficiency" min="0.05" max="1" step="0.01">
          <output data-for="efficiency"></output>
        </label>
        <label>residual embodied fraction
          <input type="range" data-builder="residual" min="0" max="1" step="0.01">
          <output data-for="residual"></output>
        </label>
        <label>stack lifetime (years)
          <input type="number" data-builder="lifetime" min="0.5" step="0.5"></label>`;
      const b = option.builder;
      const on = (name: string, handler: (el: HTMLInputElement) => void) => {
        const el = holder.querySelector<HTMLInputElement>(`[data-builder="${name}"]`);
        if (!el) return;
        el.addEventListener(el.tagName === "SELECT" ? "change" : "input", () => {
          handler(el);
          this.syncControls();
          this.scheduleRefetch();
        });
      };
      on("die", (el) => (b.die = el.value));
      on("count", (el) => (b.count = clampCount(el.valueAsNumber)));
      on("efficiency", (el) => (b.efficiency = clamp(el.valueAsNumber, 0.05, 1)));
      on("residual", (el) => (b.residual = clamp(el.valueAsNumber, 0, 1)));
      on("lifetime", (el) => (b.lifetimeYears = clamp(el.valueAsNumber, 0.5, 50)));
    }
    const set = (name: string, value: string) => {
      const el = holder.querySelector<HTMLInputElement>(`[data-builder="${name}"]`);
      if (el) el.value = value;
      const out = holder.querySelector<HTMLOutputElement>(`output[data-for="${name}"]`);
      if (out) out.textContent = value;
    };
    set("die", option.builder.die);
    set("count", String(option.builder.count));
    set("efficiency", String(option.builder.efficiency));
    set("residual", String(option.builder.residual));
    set("lifetime", String(option.builder.lifetimeYears));
  }

  private syncControls(): void {
    const pct = (v: number) => `${Math.round(v * 100)}%`;
    const setSlider = (testid: string, value: number, display: string) => {
      this.q<HTMLInputElement>(`[data-testid="${testid}"]`).value = String(value);
      this.q<HTMLOutputElement>(`output[data-for="${testid}"]`).textContent = display;
    };
    setSlider("r-sleep", this.state.rSleep, pct(this.state.rSleep));
    setSlider("r-active", this.state.rActive, pct(this.state.rActive));
    setSlider("renewables", this.state.renewableFraction, pct(this.state.renewableFraction));
    this.q<HTMLInputElement>('[data-testid="grid-base"]').value = String(this.state.gridBase);

    const preset = activePreset(this.state);
    for (const button of this.root.querySelectorAll<HTMLButtonElement>("[data-preset]")) {
      button.classList.toggle("active", button.dataset.preset === preset);
    }
    for (const radio of this.root.querySelectorAll<HTMLInputElement>('input[name="mode"]')) {
      radio.checked = radio.value === this.state.mode;
    }
    this.renderBuilder(0);
    this.renderBuilder(1);
  }

  private populateOptionSelects(): void {
    if (!this.catalog) return;
    const ids = [
      ...Object.keys(this.catalog.devices),
      ...Object.keys(this.catalog.compositions),
    ];
    for (const side of [0, 1] as const) {
      const select = this.q<HTMLSelectElement>(`[data-testid="option${side}-select"]`);
      select.innerHTML =
        ids.map((id) => `<option value="${id}">${id}</option>`).join("") +
        `<option value="${CUSTOM}">custom stack&hellip;</option>`;
      const option = this.option(side);
      select.value = option.kind === "catalog" ? option.catalogId : CUSTOM;
    }
  }

  private async start(): Promise<void> {
    try {
      this.catalog = await this.client.getCatalog();
    } catch (err) {
      this.showBanner(err);
      return;
    }
    this.populateOptionSelects();
    this.syncControls();
    this.refetch();
  }

  private interposerDefaults(): { embodied: number; overhead: number } {
    const std = this.catalog?.interposers["std"];
    if (std) return { embodied: std.embodied_kgco2e, overhead: std.power_overhead_watts };
    const any = this.catalog ? Object.values(this.catalog.interposers)[0] : undefined;
    return any
      ? { embodied: any.embodied_kgco2e, overhead: any.power_overhead_watts }
      : { embodied: 0, overhead: 0 };
  }

  /** Issue both requests now (debounce already elapsed). */
  refetch(): void {
    const { embodied, overhead } = this.interposerDefaults();
    const option0 = optionRef(this.state.option0, embodied, overhead);
    const option1 = optionRef(this.state.option1, embodied, overhead);
    const scenario = scenarioBody(this.state);

    const analyzeTicket = this.analyzeSeq.begin();
    this.client
      .analyze(
        {
          option0,
          option1,
          scenario,
          include_curves: true,
          curve_samples: this.curveSamples,
        },
        analyzeTicket.signal,
      )
      .then((response) => {
        if (this.analyzeSeq.accept(analyzeTicket.ticket)) this.renderAnalysis(response);
      })
      .catch((err) => this.handleError(err, this.analyzeSeq, analyzeTicket.ticket));

    const sweepTicket = this.sweepSeq.begin();
    this.client
      .sweep(
        {
          option0,
          option1,
          scenario,
          parameter: "renewable_fraction",
          values: sweepValues(this.sweepPoints),
        },
        sweepTicket.signal,
      )
      .then((response) => {
        if (this.sweepSeq.accept(sweepTicket.ticket)) {
          this.lastSweep = response;
          this.renderSweep();
        }
      })
      .catch((err) => this.handleError(err, this.sweepSeq, sweepTicket.ticket));
  }

  private handleError(err: unknown, seq: LatestWins, ticket: number): void {
    if (err instanceof DOMException && err.name === "AbortError") return;
    if (!seq.isCurrent(ticket)) return;
    if (err instanceof ApiError) {
      this.showError(err);
    } else if (err instanceof NetworkFailure) {
      this.showBanner(err);
    } else {
      this.showError(new ApiError(0, "client_error", String(err)));
    }
  }

  private renderAnalysis(response: AnalyzeResponse): void {
    this.hideError();
    const tI = response.t_indifference_years;
    const tB = response.t_breakeven_years;
    const tIEl = this.q('[data-testid="ti-callout"]');
    tIEl.textContent = tI === null ? "never pays back" : formatYears(tI);
    tIEl.title = tI === null ? "" : `${tI} years`;
    const tBEl = this.q('[data-testid="tb-callout"]');
    tBEl.textContent = tB === null ? "never" : formatYears(tB);
    tBEl.title = tB === null ? "" : `${tB} years`;

    const adjusted = this.q('[data-testid="adjusted-duty"]');
    if (response.resolved.comparison_mode === "equal-work") {
      const duty = response.resolved.option1.duty;
      adjusted.textContent =
        `equal-work: option 1 duty adjusted to r_active = ${duty.r_active.toPrecision(4)}, ` +
        `r_sleep = ${duty.r_sleep.toPrecision(4)}`;
      adjusted.classList.remove("hidden");
    } else {
      adjusted.classList.add("hidden");
    }

    const curves = response.curves ?? [];
    this.q('[data-testid="curves-chart"]').innerHTML = renderCurvesChart(curves, tI);
  }

  private renderSweep(): void {
    if (!this.lastSweep) return;
    this.q('[data-testid="sweep-chart"]').innerHTML = renderSweepChart(
      this.lastSweep.rows,
      this.state.renewableFraction,
      "renewable fraction",
    );
  }

  private showError(err: ApiError): void {
    const box = this.q('[data-testid="error-box"]');
    box.textContent = err.field
      ? `${err.code} (${err.field}): ${err.message}`
      : `${err.code}: ${err.message}`;
    box.classList.remove("hidden");
  }

  private hideError(): void {
    this.q('[data-testid="error-box"]').classList.add("hidden");
  }

  private showBanner(err: unknown): void {
    const banner = this.q('[data-testid="network-banner"]');
    banner.querySelector(".banner-text")!.textContent =
      err instanceof Error ? err.message : "analysis service unreachable";
    banner.classList.remove("hidden");
  }

  private hideBanner(): void {
    this.q('[data-testid="network-banner"]').classList.add("hidden");
  }
}

export function createDashboard(root: HTMLElement, options?: DashboardOptions): Dashboard {
  return new Dashboard(root, options);
}
