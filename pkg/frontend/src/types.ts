/** Payload shapes of the helixweb service API. */

export interface ObjectView {
  rank: number;
  c1: number[];
  ch2_x2: number;
  shift: number;
  /** Human-readable class string, produced by the service. */
  label: string;
  /** Exact slope as a fraction string, or "inf" for torsion. */
  slope: string;
  /** ch_2 display string (halves allowed). */
  ch2: string;
}

export interface QuiverView {
  vertices: string[];
  arrows: number[][];
}

export interface BMatrixView {
  n: number;
  b: number[][];
}

export interface CrossCheckView {
  match: boolean;
  vertex: number;
  psi: number[];
  b_mutated: BMatrixView;
  b_tilted: BMatrixView;
}

export interface SessionState {
  id: string;
  helix: unknown;
  objects: ObjectView[];
  quiver: QuiverView;
  b_matrix: BMatrixView;
  history_length: number;
  cross_check?: CrossCheckView;
}

export interface HeightResponse {
  vertex: number;
  bound: number;
  height_functions: number[][];
}

export interface ServiceError {
  reason: string;
  detail?: string;
}

export class ApiError extends Error {
  readonly reason: string;
  readonly status: number;

  constructor(status: number, body: ServiceError) {
    super(body.detail ? `${body.reason}: ${body.detail}` : body.reason);
    this.reason = body.reason;
    this.status = status;
  }
}
