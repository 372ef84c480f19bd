// Submission history and error-banner state, kept apart from the DOM so
// it can be tested without one.

import { ModelResult } from './api'

export interface HistoryEntry {
  text: string
  model: string
  results: ModelResult[]
  raw: string
}

export const HISTORY_LIMIT = 20

export class AppState {
  history: HistoryEntry[] = []
  banner: string | null = null
  private listeners: Array<() => void> = []

  onChange(listener: () => void): void {
    this.listeners.push(listener)
  }

  private emit(): void {
    for (const listener of this.listeners) listener()
  }

  recordSuccess(entry: HistoryEntry): void {
    this.history.unshift(entry)
    if (this.history.length > HISTORY_LIMIT) {
      this.history.length = HISTORY_LIMIT
    }
    this.banner = null
    this.emit()
  }

  /** A failed request must not disturb what already succeeded. */
  recordFailure(message: string): void {
    this.banner = message
    this.emit()
  }

  clearBanner(): void {
    this.banner = null
    this.emit()
  }
}
