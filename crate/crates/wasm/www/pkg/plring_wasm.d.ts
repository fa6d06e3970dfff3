/* tslint:disable */
/* eslint-disable */

/**
 * A word in `r1..r5` of at most `max_len` letters carrying the closed set
 * `k` into the open arc `j`.
 */
export function find_move(k: string, j: string, max_len: number, commutator: boolean): string;

/**
 * Orbit coverage of `window` under the line generators named in `gens`
 * (from `a`, `b`), one row per depth.
 */
export function orbit_coverage(gens: string, seed: string, window: string, eps: string, depth: number): string;

/**
 * Every identity checked for the standard ring.
 */
export function ring_certificate(): string;

/**
 * Supports of `r1..r5` (and `rp1..rp5` when asked) as arcs `[name, a, b]`
 * on the circle of length 5, endpoints as exact `p/q` strings.
 */
export function ring_diagram(with_rprime: boolean): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly find_move: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly orbit_coverage: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number];
    readonly ring_certificate: () => [number, number];
    readonly ring_diagram: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
