import type {
  AnalyzeResponse,
  CatalogResponse,
  DevicePayload,
  SweepResponse,
} from "../src/types";

export function makeDevice(id: string, overrides: Partial<DevicePayload> = {}): DevicePayload {
  return {
    id,
    display_name: id,
    tech_node_nm: 16,
    unit_work_latency_ns: 4.6,
    parallel_units: 1,
    power: { p_dynamic: 21.41, p_static: 0.92, p_sleep: 0 },
    embodied_kgco2e: 25,
    lifetime_years: 2,
    ...overrides,
  };
}

export function makeCatalog(): CatalogResponse {
  return {
    devices: {
      zcu102: makeDevice("zcu102"),
      vmk180: makeDevice("vmk180", {
        tech_node_nm: 7,
        unit_work_latency_ns: 3.99,
        power: { p_dynamic: 12.738, p_static: 9.384, p_sleep: 0 },
        embodied_kgco2e: 18,
        lifetime_years: 6,
      }),
    },
    interposers: {
      std: {
        id: "std",
        embodied_kgco2e: 12,
        sdll_efficiency: 0.75,
        power_overhead_watts: 0,
        sdll_capacity: 512,
      },
    },
    compositions: {
      refresh_4x_zcu102: {
        id: "refresh_4x_zcu102",
        display_name: "4 x zcu102",
        dies: [{ device: "zcu102", count: 4 }],
        residual_embodied_fraction: 0,
        lifetime_years: 6,
        sdll_required: 128,
        composed: makeDevice("refresh_4x_zcu102", {
          unit_work_latency_ns: 4.6 / 3,
          embodied_kgco2e: 12,
          lifetime_years: 6,
        }),
      },
    },
    lca_reference: [
      {
        product: "iPhone 14",
        manufacturing_pct: 79,
        operational_pct: 18,
        supply_chain_pct: 2,
        disposal_pct: 0,
      },
    ],
  };
}

export function makeAnalyze(overrides: Partial<AnalyzeResponse> = {}): AnalyzeResponse {
  return {
    t_indifference_years: 2.6193436256657616,
    t_breakeven_years: 7.858030876997286,
    rate0_kg_per_year: 8.59365,
    rate1_kg_per_year: 6.303,
    o0_kg_per_year: 6.59365,
    o1_kg_per_year: 3.303,
    e0_kg: 12,
    e1_kg: 18,
    resolved: {
      option0: {
        label: "refresh_4x_zcu102",
        device: makeDevice("refresh_4x_zcu102"),
        duty: { r_sleep: 0.25, r_active: 0.25, f_active: 0.1875, f_idle: 0.5625, f_sleep: 0.25 },
      },
      option1: {
        label: "vmk180",
        device: makeDevice("vmk180"),
        duty: { r_sleep: 0.25, r_active: 0.25, f_active: 0.1875, f_idle: 0.5625, f_sleep: 0.25 },
      },
      grid: {
        base_intensity_g_per_kwh: 400,
        renewable_fraction: 0.9,
        renewable_intensity_g_per_kwh: 0,
        effective_intensity_g_per_kwh: 39.99999999999999,
      },
      comparison_mode: "equal-time",
      horizon_years: 10,
    },
    curves: [
      {
        option_label: "refresh_4x_zcu102",
        includes_upfront: true,
        samples: [
          [0, 12],
          [2.5, 33.5],
          [5, 55],
          [7.5, 76.5],
          [10, 98],
        ],
      },
      {
        option_label: "vmk180",
        includes_upfront: true,
        samples: [
          [0, 18],
          [2.5, 33.8],
          [5, 49.5],
          [7.5, 65.3],
          [10, 81],
        ],
      },
    ],
    ...overrides,
  };
}

export function makeSweep(values: number[]): SweepResponse {
  return {
    parameter_name: "renewable_fraction",
    rows: values.map((value, i) => ({
      value,
      t_indifference_years: 0.2 + i * 0.6,
      t_breakeven_years: 0.6 + i * 1.8,
      error: null,
    })),
  };
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
