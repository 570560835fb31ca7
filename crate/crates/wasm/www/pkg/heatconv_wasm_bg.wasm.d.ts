/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_profile_free: (a: number, b: number) => void;
export const __wbg_trace_free: (a: number, b: number) => void;
export const heat_profile: (a: bigint, b: bigint, c: number) => [number, number, number];
export const profile_distance: (a: number) => number;
export const profile_gaussian: (a: number) => [number, number];
export const profile_rescaled: (a: number) => [number, number];
export const profile_x: (a: number) => [number, number];
export const psi_trace: (a: bigint, b: number) => [number, number, number];
export const sharp_constant_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const trace_limit: (a: number) => number;
export const trace_times: (a: number) => [number, number];
export const trace_values: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
