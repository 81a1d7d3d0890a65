/** Single configuration point: where the simulation service lives. */

const DEFAULT_BASE_URL = 'http://127.0.0.1:8750';

let baseUrl =
  (typeof localStorage !== 'undefined' && localStorage.getItem('defectflow.baseUrl')) ||
  DEFAULT_BASE_URL;

export function getBaseUrl(): string {
  return baseUrl;
}

export function setBaseUrl(url: string): void {
  baseUrl = url.replace(/\/+$/, '');
  if (typeof localStorage !== 'undefined') {
    localStorage.setItem('defectflow.baseUrl', baseUrl);
  }
}
