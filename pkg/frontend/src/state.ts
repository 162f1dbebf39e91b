import type { ComparisonMode, CompositionBody, OptionRef } from "./types";

// Duty presets: fraction of time asleep, active share of awake time.
// These tuples must be set exactly, never reconstructed from pixels.
export const DUTY_PRESETS = {
  case1: { r_sleep: 0.25, r_active: 0.25 },
  case2: { r_sleep: 0.5, r_active: 0.5 },
  case3: { r_sleep: 0.25, r_active: 0.75 },
} as const;

export type PresetName = keyof typeof DUTY_PRESETS;

export interface BuilderState {
  die: string;
  count: number; // 1..8
  efficiency: number; // (0, 1]
  residual: number; // [0, 1]
  lifetimeYears: number;
}

export interface OptionState {
  kind: "catalog" | "builder";
  catalogId: string;
  builder: BuilderState;
}

export interface UiState {
  option0: OptionState;
  option1: OptionState;
  renewableFraction: number; // [0, 1]
  rSleep: number; // [0, 1)
  rActive: number; // [0, 1]
  mode: ComparisonMode;
  gridBase: number;
  horizonYears: number;
}

export function clamp(value: number, lo: number, hi: number): number {
  if (Number.isNaN(value)) return lo;
  return Math.min(hi, Math.max(lo, value));
}

export function clampCount(value: number): number {
  return Math.round(clamp(value, 1, 8));
}

export function initialState(): UiState {
  const builder: BuilderState = {
    die: "zcu102",
    count: 4,
    efficiency: 0.75,
    residual: 0,
    lifetimeYears: 6,
  };
  return {
    option0: { kind: "catalog", catalogId: "refresh_4x_zcu102", builder: { ...builder } },
    option1: { kind: "catalog", catalogId: "vmk180", builder: { ...builder } },
    renewableFraction: 0.9,
    rSleep: DUTY_PRESETS.case1.r_sleep,
    rActive: DUTY_PRESETS.case1.r_active,
    mode: "equal-time",
    gridBase: 400,
    horizonYears: 10,
  };
}

export function applyPreset(state: UiState, preset: PresetName): void {
  state.rSleep = DUTY_PRESETS[preset].r_sleep;
  state.rActive = DUTY_PRESETS[preset].r_active;
}

/** Which preset the current sliders correspond to, if any. */
export function activePreset(state: UiState): PresetName | null {
  for (const name of Object.keys(DUTY_PRESETS) as PresetName[]) {
    const p = DUTY_PRESETS[name];
    if (state.rSleep === p.r_sleep && state.rActive === p.r_active) return name;
  }
  return null;
}

function builderBody(
  builder: BuilderState,
  interposerEmbodied: number,
  interposerOverhead: number,
): CompositionBody {
  return {
    dies: [{ device: builder.die, count: builder.count }],
    interposer: {
      embodied_kgco2e: interposerEmbodied,
      sdll_efficiency: builder.efficiency,
      power_overhead_watts: interposerOverhead,
    },
    lifetime_years: builder.lifetimeYears,
    residual_embodied_fraction: builder.residual,
  };
}

export function optionRef(
  option: OptionState,
  interposerEmbodied: number,
  interposerOverhead: number,
): OptionRef {
  if (option.kind === "catalog") return option.catalogId;
  return builderBody(option.builder, interposerEmbodied, interposerOverhead);
}

export function scenarioBody(state: UiState) {
  return {
    grid: {
      base_intensity_g_per_kwh: state.gridBase,
      renewable_fraction: state.renewableFraction,
    },
    duty: { r_sleep: state.rSleep, r_active: state.rActive },
    comparison_mode: state.mode,
    horizon_years: state.horizonYears,
  };
}

/** Evenly spaced sweep grid for the renewable-fraction chart. */
export function sweepValues(points: number, max = 0.95): number[] {
  if (points <= 1) return [max];
  const values: number[] = [];
  // i/(points-1) first so the endpoints land on 0 and max exactly
  for (let i = 0; i < points; i++) values.push((i / (points - 1)) * max);
  return values;
}
