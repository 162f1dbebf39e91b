// Shapes of the analysis service's JSON payloads. The dashboard never
// computes carbon numbers itself; everything rendered comes from these.

export interface GridBody {
  base_intensity_g_per_kwh: number;
  renewable_fraction: number;
  renewable_intensity_g_per_kwh?: number;
}

export interface DutyBody {
  r_sleep: number;
  r_active: number;
}

export type ComparisonMode = "equal-time" | "equal-work";

export interface ScenarioBody {
  grid: GridBody;
  duty: DutyBody;
  comparison_mode?: ComparisonMode;
  horizon_years?: number;
}

export interface InterposerBody {
  embodied_kgco2e: number;
  sdll_efficiency: number;
  power_overhead_watts?: number;
  sdll_capacity?: number | null;
}

export interface DieBody {
  device: string;
  count?: number;
}

export interface CompositionBody {
  dies: DieBody[];
  interposer: string | InterposerBody;
  lifetime_years: number;
  residual_embodied_fraction?: number;
  sdll_required?: number | null;
}

export type OptionRef = string | CompositionBody;

export interface AnalyzeRequest {
  option0: OptionRef;
  option1: OptionRef;
  scenario: ScenarioBody;
  include_curves?: boolean;
  curve_samples?: number;
}

export interface SweepRequest {
  option0: OptionRef;
  option1: OptionRef;
  scenario: ScenarioBody;
  parameter: "renewable_fraction" | "r_active" | "r_sleep" | "die_count";
  values: number[];
}

export interface DevicePayload {
  id: string;
  display_name: string;
  tech_node_nm: number;
  unit_work_latency_ns: number;
  parallel_units: number;
  power: { p_dynamic: number; p_static: number; p_sleep: number };
  embodied_kgco2e: number;
  lifetime_years: number;
}

export interface ResolvedDuty {
  r_sleep: number;
  r_active: number;
  f_active: number;
  f_idle: number;
  f_sleep: number;
}

export interface ResolvedOption {
  label: string;
  device: DevicePayload;
  duty: ResolvedDuty;
}

export interface CurvePayload {
  option_label: string;
  includes_upfront: boolean;
  samples: [number, number][];
}

export interface AnalyzeResponse {
  t_indifference_years: number | null;
  t_breakeven_years: number | null;
  rate0_kg_per_year: number;
  rate1_kg_per_year: number;
  o0_kg_per_year: number;
  o1_kg_per_year: number;
  e0_kg: number;
  e1_kg: number;
  resolved: {
    option0: ResolvedOption;
    option1: ResolvedOption;
    grid: {
      base_intensity_g_per_kwh: number;
      renewable_fraction: number;
      renewable_intensity_g_per_kwh: number;
      effective_intensity_g_per_kwh: number;
    };
    comparison_mode: ComparisonMode;
    horizon_years: number;
  };
  curves?: CurvePayload[];
}

export interface SweepRowPayload {
  value: number;
  t_indifference_years: number | null;
  t_breakeven_years: number | null;
  error: string | null;
}

export interface SweepResponse {
  parameter_name: string;
  rows: SweepRowPayload[];
}

export interface CatalogResponse {
  devices: Record<string, DevicePayload>;
  interposers: Record<
    string,
    {
      id: string;
      embodied_kgco2e: number;
      sdll_efficiency: number;
      power_overhead_watts: number;
      sdll_capacity: number | null;
    }
  >;
  compositions: Record<
    string,
    {
      id: string;
      display_name: string;
      dies: { device: string; count: number }[];
      residual_embodied_fraction: number;
      lifetime_years: number;
      sdll_required: number | null;
      composed: DevicePayload;
    }
  >;
  lca_reference: {
    product: string;
    manufacturing_pct: number;
    operational_pct: number;
    supply_chain_pct: number;
    disposal_pct: number;
  }[];
}
