// Parser for the learning-curve CSVs written by the training CLI:
// a fixed four-column header, one curve kind per file, x strictly
// increasing, accuracies in [0, 1].

export interface CurvePoint {
  x: number
  train: number
  validation: number
}

export interface Curve {
  kind: string
  points: CurvePoint[]
}

export class CsvError extends Error {
  constructor(message: string) {
    super(message)
    this.name = 'CsvError'
  }
}

export const HEADER = 'kind,x,train_accuracy,validation_accuracy'

export function parseCurveCsv(text: string): Curve {
  const lines = text.split(/\r?\n/).filter(line => line.trim() !== '')
  if (lines.length === 0 || lines[0].trim() !== HEADER) {
    throw new CsvError(`bad curve header: ${lines[0] ?? '(empty file)'}`)
  }
  if (lines.length < 2) {
    throw new CsvError('curve file has no points')
  }
  const kinds = new Set<string>()
  const points: CurvePoint[] = []
  for (const line of lines.slice(1)) {
    const cells = line.split(',')
    if (cells.length !== 4) {
      throw new CsvError(`expected 4 columns, got ${cells.length}: ${line}`)
    }
    kinds.add(cells[0])
    const x = Number(cells[1])
    const train = Number(cells[2])
    const validation = Number(cells[3])
    if (![x, train, validation].every(Number.isFinite)) {
      throw new CsvError(`non-numeric row: ${line}`)
    }
    if (train < 0 || train > 1 || validation < 0 || validation > 1) {
      throw new CsvError(`accuracy outside [0, 1]: ${line}`)
    }
    points.push({ x, train, validation })
  }
  if (kinds.size !== 1) {
    throw new CsvError(`mixed curve kinds: ${[...kinds].sort().join(', ')}`)
  }
  for (let i = 1; i < points.length; i++) {
    if (points[i].x <= points[i - 1].x) {
      throw new CsvError('x values must be strictly increasing')
    }
  }
  return { kind: [...kinds][0], points }
}
