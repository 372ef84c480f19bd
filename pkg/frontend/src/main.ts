import { setApiBase } from './api'
import { initApp } from './ui'

// Served from a different origin than the API in development; the
// service enables CORS, so pointing the client at it is enough.
const params = new URLSearchParams(window.location.search)
const api = params.get('api')
if (api) setApiBase(api)

initApp(document.querySelector<HTMLElement>('#app')!)
