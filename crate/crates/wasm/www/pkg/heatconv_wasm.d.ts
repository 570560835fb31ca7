/* tslint:disable */
/* eslint-disable */

export class Profile {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Sup distance between the two curves.
     */
    distance(): number;
    readonly gaussian: Float64Array;
    readonly rescaled: Float64Array;
    readonly x: Float64Array;
}

export class Trace {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly limit: number;
    readonly times: Float64Array;
    readonly values: Float64Array;
}

/**
 * Self-similar profile of a seeded mixture under `kappa = 1` heat flow at
 * time `t`, with the unit-variance Gaussian it converges to.
 */
export function heat_profile(seed: bigint, stream: bigint, t: number): Profile;

/**
 * Psi for `n = 2`, `p = (2, 2)` on seeded two-bump mixtures.
 */
export function psi_trace(seed: bigint, points: number): Trace;

/**
 * `[p_0, C_0, p_1, C_1, ...]` for `count` exponents spread over `[lo, hi]`,
 * skipping `p = 1` where the constant is trivially 1.
 */
export function sharp_constant_curve(lo: number, hi: number, count: number, dimension: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_profile_free: (a: number, b: number) => void;
    readonly __wbg_trace_free: (a: number, b: number) => void;
    readonly heat_profile: (a: bigint, b: bigint, c: number) => [number, number, number];
    readonly profile_distance: (a: number) => number;
    readonly profile_gaussian: (a: number) => [number, number];
    readonly profile_rescaled: (a: number) => [number, number];
    readonly profile_x: (a: number) => [number, number];
    readonly psi_trace: (a: bigint, b: number) => [number, number, number];
    readonly sharp_constant_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly trace_limit: (a: number) => number;
    readonly trace_times: (a: number) => [number, number];
    readonly trace_values: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
