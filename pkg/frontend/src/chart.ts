import type { CurvePayload, SweepRowPayload } from "./types";

// SVG chart rendering. Only coordinate mapping happens here: every plotted
// value is a field or sample straight from an API response.

const W = 640;
const H = 360;
const M = { top: 16, right: 16, bottom: 40, left: 56 };
const COLORS = ["#1f77b4", "#d62728"];

interface Frame {
  x(v: number): number;
  y(v: number): number;
}

function makeFrame(xs: number[], ys: number[]): Frame {
  let [xLo, xHi] = [Math.min(...xs), Math.max(...xs)];
  let [yLo, yHi] = [Math.min(...ys), Math.max(...ys)];
  if (xHi === xLo) xHi = xLo + 1;
  if (yHi === yLo) yHi = yLo + 1;
  const plotW = W - M.left - M.right;
  const plotH = H - M.top - M.bottom;
  return {
    x: (v) => M.left + ((v - xLo) / (xHi - xLo)) * plotW,
    y: (v) => M.top + plotH - ((v - yLo) / (yHi - yLo)) * plotH,
  };
}

function axisLabels(xLabel: string, yLabel: string): string {
  return (
    `<text x="${W / 2}" y="${H - 8}" text-anchor="middle" class="axis-label">${xLabel}</text>` +
    `<text x="14" y="${H / 2}" text-anchor="middle" class="axis-label" ` +
    `transform="rotate(-90 14 ${H / 2})">${yLabel}</text>`
  );
}

function escapeText(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function svgDoc(body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" role="img">` +
    `<rect width="${W}" height="${H}" fill="var(--chart-bg, #ffffff)"/>` +
    body +
    "</svg>"
  );
}

function polyline(points: string, color: string): string {
  return `<polyline points="${points}" fill="none" stroke="${color}" stroke-width="2"/>`;
}

/**
 * Two cumulative-carbon curves with an optional vertical crossover rule.
 * The rule is drawn at the service-reported indifference time; no y value
 * is computed client-side.
 */
export function renderCurvesChart(
  curves: CurvePayload[],
  tIndifference: number | null,
): string {
  const xs = curves.flatMap((c) => c.samples.map(([t]) => t));
  const ys = curves.flatMap((c) => c.samples.map(([, v]) => v));
  if (tIndifference !== null) xs.push(tIndifference);
  const frame = makeFrame(xs, ys);

  let body = axisLabels("service time (years)", "cumulative kgCO2e");
  curves.forEach((curve, i) => {
    const pts = curve.samples.map(([t, v]) => `${frame.x(t)},${frame.y(v)}`).join(" ");
    body += polyline(pts, COLORS[i % COLORS.length]);
    body +=
      `<text x="${M.left + 8}" y="${M.top + 16 + 16 * i}" fill="${COLORS[i % COLORS.length]}" ` +
      `class="legend">${escapeText(curve.option_label)}</text>`;
  });

  if (tIndifference === null) {
    body +=
      `<text x="${W / 2}" y="${M.top + 24}" text-anchor="middle" class="no-crossover-note">` +
      "no indifference point</text>";
  } else {
    const x = frame.x(tIndifference);
    body +=
      `<line x1="${x}" y1="${M.top}" x2="${x}" y2="${H - M.bottom}" ` +
      `stroke="#2ca02c" stroke-width="2" stroke-dasharray="5 3" class="crossover-marker"/>` +
      `<text x="${x + 6}" y="${M.top + 14}" fill="#2ca02c" class="crossover-label">` +
      `t_I = ${formatYears(tIndifference)}</text>`;
  }
  return svgDoc(body);
}

/**
 * Indifference time vs swept parameter. Defined rows form line segments;
 * an undefined or failed row leaves a gap and gets a tooltip tick at the
 * bottom axis. The row nearest the live slider value is highlighted.
 */
export function renderSweepChart(
  rows: SweepRowPayload[],
  currentValue: number,
  parameterLabel: string,
): string {
  const defined = rows.filter((r) => r.t_indifference_years !== null && r.error === null);
  const xs = rows.map((r) => r.value);
  xs.push(currentValue);
  if (defined.length === 0) {
    return svgDoc(
      axisLabels(parameterLabel, "indifference time (years)") +
        `<text x="${W / 2}" y="${H / 2}" text-anchor="middle" class="no-crossover-note">` +
        "no indifference point in range</text>",
    );
  }
  const ys = defined.map((r) => r.t_indifference_years as number);
  const frame = makeFrame(xs, ys);

  let body = axisLabels(parameterLabel, "indifference time (years)");

  let segment: string[] = [];
  const segments: string[][] = [];
  for (const row of rows) {
    if (row.t_indifference_years === null || row.error !== null) {
      if (segment.length > 0) segments.push(segment);
      segment = [];
      const reason = row.error ?? "no indifference point";
      body +=
        `<line x1="${frame.x(row.value)}" y1="${H - M.bottom}" x2="${frame.x(row.value)}" ` +
        `y2="${H - M.bottom - 8}" stroke="#d62728" stroke-width="2" class="row-gap">` +
        `<title>${escapeText(`${row.value}: ${reason}`)}</title></line>`;
      continue;
    }
    segment.push(`${frame.x(row.value)},${frame.y(row.t_indifference_years)}`);
  }
  if (segment.length > 0) segments.push(segment);
  for (const seg of segments) {
    if (seg.length === 1) {
      const [x, y] = seg[0].split(",");
      body += `<circle cx="${x}" cy="${y}" r="3" fill="${COLORS[0]}"/>`;
    } else {
      body += polyline(seg.join(" "), COLORS[0]);
    }
  }

  let nearest = defined[0];
  for (const row of defined) {
    if (Math.abs(row.value - currentValue) < Math.abs(nearest.value - currentValue)) {
      nearest = row;
    }
  }
  body +=
    `<circle cx="${frame.x(nearest.value)}" cy="${frame.y(nearest.t_indifference_years as number)}" ` +
    `r="6" fill="none" stroke="#2ca02c" stroke-width="2.5" class="sweep-highlight"/>`;
  return svgDoc(body);
}

export function formatYears(t: number | null): string {
  if (t === null) return "never";
  return `${t.toPrecision(4)} y`;
}
