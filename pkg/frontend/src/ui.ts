// DOM assembly and event wiring for the playground page.

import { ApiError, ModelChoice, predict, rawField } from './api'
import { renderChart } from './chart'
import { CsvError, parseCurveCsv } from './csv'
import { AppState, HistoryEntry } from './state'

const PAGE = `
  <h1>tweetsent playground</h1>
  <div id="banner" class="banner" hidden></div>
  <section class="submit-row">
    <input id="phrase" type="text" placeholder="type a tweet..." size="48" />
    <select id="model">
      <option value="both">both</option>
      <option value="lr">lr</option>
      <option value="bilstm">bilstm</option>
    </select>
    <button id="submit">predict</button>
  </section>
  <section id="cards" class="cards"></section>
  <section>
    <h2>history</h2>
    <ul id="history"></ul>
  </section>
  <section class="charts">
    <h2>learning curves</h2>
    <div class="chart-loader">
      <label>lr curve CSV <input id="lr-curve-file" type="file" accept=".csv" /></label>
      <div id="lr-chart"></div>
    </div>
    <div class="chart-loader">
      <label>bilstm curve CSV <input id="bilstm-curve-file" type="file" accept=".csv" /></label>
      <div id="bilstm-chart"></div>
    </div>
  </section>
`

export function buildPage(root: HTMLElement): void {
  root.innerHTML = PAGE
}

function cardNote(result: { truncated: boolean; degenerate_input: boolean }): string {
  if (result.degenerate_input) return 'input cleaned to nothing'
  if (result.truncated) return 'input truncated to the model maximum'
  return ''
}

/**
 * One card per model result. Label and probability are lifted verbatim
 * from the response body so the page shows exactly what the service said.
 */
export function renderCards(container: HTMLElement, entry: HistoryEntry): void {
  container.innerHTML = ''
  for (const result of entry.results) {
    const card = document.createElement('div')
    card.className = 'model-card'
    card.dataset.model = result.model

    const name = document.createElement('h3')
    name.className = 'card-model'
    name.textContent = result.model
    card.appendChild(name)

    const label = document.createElement('p')
    label.className = 'card-label'
    label.textContent = rawField(entry.raw, result.model, 'label') ?? result.label
    card.appendChild(label)

    const prob = document.createElement('p')
    prob.className = 'card-prob'
    prob.textContent =
      rawField(entry.raw, result.model, 'probability_positive') ??
      String(result.probability_positive)
    card.appendChild(prob)

    const tokens = document.createElement('p')
    tokens.className = 'card-tokens'
    tokens.textContent = result.tokens.join(' ')
    card.appendChild(tokens)

    const note = cardNote(result)
    if (note) {
      const flag = document.createElement('p')
      flag.className = 'card-note'
      flag.textContent = note
      card.appendChild(flag)
    }
    container.appendChild(card)
  }
}

export function renderHistory(list: HTMLElement, state: AppState): void {
  list.innerHTML = ''
  for (const entry of state.history) {
    const item = document.createElement('li')
    const labels = entry.results
      .map(r => `${r.model}: ${r.label}`)
      .join(', ')
    item.textContent = `"${entry.text}" -> ${labels}`
    list.appendChild(item)
  }
}

export function renderBanner(banner: HTMLElement, state: AppState): void {
  if (state.banner === null) {
    banner.hidden = true
    banner.textContent = ''
  } else {
    banner.hidden = false
    banner.textContent = state.banner
  }
}

export async function submitPhrase(
  state: AppState,
  text: string,
  model: ModelChoice
): Promise<void> {
  try {
    const { data, raw } = await predict(text, model)
    state.recordSuccess({ text, model, results: data.results, raw })
  } catch (error) {
    const message =
      error instanceof ApiError
        ? `service error: ${error.message}`
        : 'service unreachable'
    state.recordFailure(message)
  }
}

export function attachCurveLoader(
  input: HTMLInputElement,
  container: HTMLElement,
  title: string
): void {
  input.addEventListener('change', () => {
    const file = input.files?.[0]
    if (!file) return
    const reader = new FileReader()
    reader.onload = () => {
      container.innerHTML = ''
      try {
        const curve = parseCurveCsv(String(reader.result))
        container.appendChild(renderChart(curve, title))
      } catch (error) {
        const message = document.createElement('p')
        message.className = 'chart-error'
        message.textContent =
          error instanceof CsvError ? error.message : 'could not read file'
        container.appendChild(message)
      }
    }
    reader.readAsText(file)
  })
}

export function initApp(root: HTMLElement, state = new AppState()): AppState {
  buildPage(root)
  const banner = root.querySelector<HTMLElement>('#banner')!
  const cards = root.querySelector<HTMLElement>('#cards')!
  const history = root.querySelector<HTMLElement>('#history')!
  const phrase = root.querySelector<HTMLInputElement>('#phrase')!
  const model = root.querySelector<HTMLSelectElement>('#model')!
  const submit = root.querySelector<HTMLButtonElement>('#submit')!

  state.onChange(() => {
    renderBanner(banner, state)
    renderHistory(history, state)
    if (state.history.length > 0 && state.banner === null) {
      renderCards(cards, state.history[0])
    }
  })

  submit.addEventListener('click', () => {
    const text = phrase.value
    if (text.trim() === '') return
    void submitPhrase(state, text, model.value as ModelChoice)
  })
  phrase.addEventListener('keydown', event => {
    if (event.key === 'Enter') submit.click()
  })

  attachCurveLoader(
    root.querySelector<HTMLInputElement>('#lr-curve-file')!,
    root.querySelector<HTMLElement>('#lr-chart')!,
    'accuracy vs training-set size'
  )
  attachCurveLoader(
    root.querySelector<HTMLInputElement>('#bilstm-curve-file')!,
    root.querySelector<HTMLElement>('#bilstm-chart')!,
    'accuracy vs epoch'
  )
  return state
}
