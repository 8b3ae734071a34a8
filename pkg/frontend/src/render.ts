// DOM rendering: the SVG map with one node per feature, live contact
// markers, and the announcement feed. Pure functions over elements the
// caller owns, so everything here runs under jsdom.

import { AnnouncementMessage, MapMessage } from './protocol.js';
import { SimContact } from './session.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

function svgEl(tag: string): SVGElement {
  return document.createElementNS(SVG_NS, tag);
}

export function renderMap(svg: SVGSVGElement, map: MapMessage): void {
  const [x0, y0, x1, y1] = map.bounds;
  svg.setAttribute('viewBox', `${x0} ${y0} ${x1 - x0} ${y1 - y0}`);
  svg.setAttribute('preserveAspectRatio', 'xMidYMid meet');
  while (svg.firstChild) svg.removeChild(svg.firstChild);

  const features = svgEl('g');
  features.setAttribute('class', 'features');
  for (const el of map.elements) {
    let node: SVGElement;
    if (el.geometry.type === 'point') {
      node = svgEl('circle');
      node.setAttribute('cx', String(el.geometry.x));
      node.setAttribute('cy', String(el.geometry.y));
      node.setAttribute('r', '4');
    } else {
      node = svgEl(el.geometry.type);
      node.setAttribute('points', el.geometry.points.map(([x, y]) => `${x},${y}`).join(' '));
    }
    node.setAttribute('class', `feature ${el.kind}`);
    node.dataset.id = el.id;
    const title = svgEl('title');
    title.textContent = el.name;
    node.appendChild(title);
    features.appendChild(node);
  }
  svg.appendChild(features);

  // Markers live above the features and survive map redraws.
  const markers = svgEl('g');
  markers.setAttribute('class', 'markers');
  svg.appendChild(markers);
}

// Rebuilds the marker layer synchronously: callers invoke this in the same
// task as the simulated event, so the DOM reflects it before the next frame.
export function updateMarkers(svg: SVGSVGElement, contacts: Iterable<SimContact>): void {
  const layer = svg.querySelector('g.markers');
  if (!layer) return;
  while (layer.firstChild) layer.removeChild(layer.firstChild);
  for (const c of contacts) {
    const dot = svgEl('circle');
    dot.setAttribute('cx', String(c.x));
    dot.setAttribute('cy', String(c.y));
    dot.setAttribute('r', '6');
    dot.setAttribute('class', c.pinned ? 'contact pinned' : 'contact');
    dot.dataset.contactId = String(c.id);
    layer.appendChild(dot);
  }
}

export function appendAnnouncement(list: HTMLElement, a: AnnouncementMessage): void {
  for (const old of list.querySelectorAll('.latest')) old.classList.remove('latest');
  const item = document.createElement('li');
  item.className = 'announcement latest';
  item.textContent = `[${a.t}] ${a.text}`;
  if (a.element_id) item.dataset.elementId = a.element_id;
  list.appendChild(item);
  list.scrollTop = list.scrollHeight;
}

export function clearFeed(list: HTMLElement): void {
  while (list.firstChild) list.removeChild(list.firstChild);
}

export function setStatus(el: HTMLElement, state: string): void {
  el.textContent = state;
  el.className = `status ${state}`;
}

export function showError(banner: HTMLElement, message: string): void {
  banner.hidden = false;
  const text = banner.querySelector('.error-text');
  if (text) text.textContent = message;
}

export function hideError(banner: HTMLElement): void {
  banner.hidden = true;
}
