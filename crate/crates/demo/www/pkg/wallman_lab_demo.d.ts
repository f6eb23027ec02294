/* tslint:disable */
/* eslint-disable */

/**
 * Every lattice predicate with its witness, plus the Hasse diagram.
 */
export function check_lattice(lattice_json: string): string;

/**
 * `op` is one of `meet`, `join`, `leq`, `normality`, `disjunctive`, `refute`.
 */
export function interval_op(op: string, a: string, b: string): string;

/**
 * Ultrafilters of a distributive lattice, the base set of each element and
 * a DOT rendering of the space.
 */
export function wallman(lattice_json: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly check_lattice: (a: number, b: number) => [number, number];
    readonly interval_op: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly wallman: (a: number, b: number) => [number, number];
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
