/* tslint:disable */
/* eslint-disable */

/**
 * Labels a graph given in `.g` text with `repair`, `tree` or `exact`.
 */
export function label_graph(text: string, method: string): string;

/**
 * Exact distribution of a sum of `l` uniforms on `[1, n]`, plus the
 * point-probability margin at `c` when `l` is even.
 */
export function pmf_curve(l: number, n: number, c: number): string;

/**
 * Sum classes of all `r`-subsets of `n` vertices under random labels in `[1, max_label]`.
 */
export function sum_histogram(n: number, r: number, max_label: number, seed: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly label_graph: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly pmf_curve: (a: number, b: number, c: number) => [number, number, number, number];
    readonly sum_histogram: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
