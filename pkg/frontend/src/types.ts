export interface MinorLabelPayload {
  s: number;
  left: number[];
  right: number[];
}

export interface VariablePayload {
  minor?: MinorLabelPayload;
  laurent?: string;
}

export interface SeedPayload {
  id: string;
  type: string;
  word: number[];
  labels: number[];
  exchangeable: number[];
  frozen: number[];
  history: number[];
  B: [number, number, number][];
  variables: Record<string, VariablePayload>;
  variable?: { label: number; laurent: string };
}

export interface ApiError {
  error: string;
}
