// Dual-line SVG chart for train/validation accuracy curves. No chart
// library: the output is a plain SVG tree the tests can inspect.

import { Curve } from './csv'

const SVG_NS = 'http://www.w3.org/2000/svg'

export interface ChartLayout {
  width: number
  height: number
  margin: { top: number; right: number; bottom: number; left: number }
}

export const DEFAULT_LAYOUT: ChartLayout = {
  width: 520,
  height: 300,
  margin: { top: 24, right: 16, bottom: 40, left: 52 },
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
  text?: string
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag)
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value)
  }
  if (text !== undefined) node.textContent = text
  return node
}

export function renderChart(
  curve: Curve,
  title: string,
  layout: ChartLayout = DEFAULT_LAYOUT
): SVGSVGElement {
  const { width, height, margin } = layout
  const innerW = width - margin.left - margin.right
  const innerH = height - margin.top - margin.bottom

  const xs = curve.points.map(p => p.x)
  const accs = curve.points.flatMap(p => [p.train, p.validation])
  const x0 = Math.min(...xs)
  const x1 = Math.max(...xs)
  const yLo = Math.max(0, Math.min(...accs) - 0.03)
  const yHi = Math.min(1, Math.max(...accs) + 0.03)

  const xPos = (x: number) =>
    margin.left + (x1 === x0 ? 0 : ((x - x0) / (x1 - x0)) * innerW)
  const yPos = (a: number) =>
    margin.top + (1 - (a - yLo) / (yHi - yLo)) * innerH

  const svg = el('svg', {
    width: String(width),
    height: String(height),
    viewBox: `0 0 ${width} ${height}`,
    class: 'curve-chart',
    'data-kind': curve.kind,
  })
  svg.appendChild(
    el('text', { x: String(width / 2), y: '16', 'text-anchor': 'middle', class: 'chart-title' }, title)
  )

  // axes
  const axisY = margin.top + innerH
  svg.appendChild(el('line', {
    x1: String(margin.left), y1: String(axisY),
    x2: String(margin.left + innerW), y2: String(axisY),
    class: 'axis', stroke: '#444',
  }))
  svg.appendChild(el('line', {
    x1: String(margin.left), y1: String(margin.top),
    x2: String(margin.left), y2: String(axisY),
    class: 'axis', stroke: '#444',
  }))
  for (const p of curve.points) {
    svg.appendChild(el('text', {
      x: String(xPos(p.x)), y: String(axisY + 16),
      'text-anchor': 'middle', class: 'tick-label',
    }, String(p.x)))
  }
  const ticks = 5
  for (let i = 0; i <= ticks; i++) {
    const a = yLo + ((yHi - yLo) * i) / ticks
    svg.appendChild(el('text', {
      x: String(margin.left - 8), y: String(yPos(a) + 4),
      'text-anchor': 'end', class: 'tick-label',
    }, a.toFixed(2)))
  }

  const pointsAttr = (pick: (p: { train: number; validation: number; x: number }) => number) =>
    curve.points.map(p => `${xPos(p.x)},${yPos(pick(p))}`).join(' ')

  svg.appendChild(el('polyline', {
    points: pointsAttr(p => p.train),
    class: 'train-line',
    fill: 'none', stroke: '#1f6feb', 'stroke-width': '2',
  }))
  svg.appendChild(el('polyline', {
    points: pointsAttr(p => p.validation),
    class: 'validation-line',
    fill: 'none', stroke: '#d1242f', 'stroke-width': '2',
  }))
  for (const p of curve.points) {
    svg.appendChild(el('circle', {
      cx: String(xPos(p.x)), cy: String(yPos(p.train)), r: '3',
      class: 'train-dot', fill: '#1f6feb',
    }))
    svg.appendChild(el('circle', {
      cx: String(xPos(p.x)), cy: String(yPos(p.validation)), r: '3',
      class: 'validation-dot', fill: '#d1242f',
    }))
  }

  // legend
  svg.appendChild(el('rect', {
    x: String(margin.left + 8), y: String(margin.top + 4),
    width: '12', height: '3', fill: '#1f6feb',
  }))
  svg.appendChild(el('text', {
    x: String(margin.left + 26), y: String(margin.top + 9), class: 'legend',
  }, 'train'))
  svg.appendChild(el('rect', {
    x: String(margin.left + 88), y: String(margin.top + 4),
    width: '12', height: '3', fill: '#d1242f',
  }))
  svg.appendChild(el('text', {
    x: String(margin.left + 106), y: String(margin.top + 9), class: 'legend',
  }, 'validation'))

  return svg
}

function polylineYs(svg: SVGSVGElement, cls: string): number[] {
  const attr = svg.querySelector(`polyline.${cls}`)?.getAttribute('points') ?? ''
  return attr
    .trim()
    .split(/\s+/)
    .map(pair => Number(pair.split(',')[1]))
}

/** Vertical pixel distance between the two lines at first and last x. */
export function lineGapsPx(svg: SVGSVGElement): { first: number; last: number } {
  const train = polylineYs(svg, 'train-line')
  const validation = polylineYs(svg, 'validation-line')
  return {
    first: Math.abs(train[0] - validation[0]),
    last: Math.abs(train[train.length - 1] - validation[validation.length - 1]),
  }
}
