// Typed client for the tweetsent inference service. Every interaction
// with the models goes through these HTTP endpoints; nothing else is
// shared with the Python side.

export interface ModelResult {
  model: string
  label: string
  probability_positive: number
  tokens: string[]
  truncated: boolean
  degenerate_input: boolean
}

export interface PredictResponse {
  results: ModelResult[]
}

export interface ModelInfo {
  model: string
  vocab_size: number
  parameter_count: number
  trained_at: string | null
  test_accuracy: number | null
}

export interface Health {
  status: string
  uptime_s: number
  models_loaded: number
}

export type ModelChoice = 'lr' | 'bilstm' | 'both'

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string
  ) {
    super(message)
    this.name = 'ApiError'
  }
}

let apiBase = ''

/** Point the client at a service origin; default is same-origin. */
export function setApiBase(base: string): void {
  apiBase = base.replace(/\/+$/, '')
}

async function bodyOrError(response: Response): Promise<string> {
  const text = await response.text()
  if (!response.ok) {
    let message = `HTTP ${response.status}`
    try {
      const parsed = JSON.parse(text)
      if (parsed && typeof parsed.error === 'string') message = parsed.error
    } catch {
      // non-JSON error body; keep the generic status message
    }
    throw new ApiError(response.status, message)
  }
  return text
}

/**
 * POST /predict. Returns both the parsed response and the exact body
 * text so the UI can display values precisely as the service sent them.
 */
export async function predict(
  text: string,
  model: ModelChoice
): Promise<{ data: PredictResponse; raw: string }> {
  const response = await fetch(`${apiBase}/predict`, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify({ text, model }),
  })
  const raw = await bodyOrError(response)
  return { data: JSON.parse(raw) as PredictResponse, raw }
}

export async function getModels(): Promise<ModelInfo[]> {
  const response = await fetch(`${apiBase}/models`)
  return JSON.parse(await bodyOrError(response)) as ModelInfo[]
}

export async function getHealth(): Promise<Health> {
  const response = await fetch(`${apiBase}/health`)
  return JSON.parse(await bodyOrError(response)) as Health
}

/**
 * Extract one field of one model's result as the literal body text
 * (strings are unquoted, numbers keep the service's exact digits).
 * Relies on each result object naming "model" before its other fields,
 * which is how the service serializes them.
 */
export function rawField(
  raw: string,
  model: string,
  field: string
): string | null {
  const pattern = new RegExp(
    `"model":\\s*"${model}"[^}]*?"${field}":\\s*("(?:[^"\\\\]|\\\\.)*"|[^,}\\s]+)`
  )
  const match = pattern.exec(raw)
  if (!match) return null
  const token = match[1]
  return token.startsWith('"') ? (JSON.parse(token) as string) : token
}
