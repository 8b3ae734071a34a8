// Wire-format map message for the bundled sample map, as the server sends it.
// The e2e test asserts the live server still produces exactly this payload,
// so the unit tests below can rely on it without a running backend.
import type { MapMessage } from '../src/protocol.js';

export const FIXTURE_MAP: MapMessage = {
  type: 'map',
  source: 'carte fictive',
  bounds: [0, 0, 240, 180],
  elements: [
    {
      id: 'cadre',
      kind: 'frame',
      name: 'cadre',
      geometry: {
        type: 'polygon',
        points: [
          [0, 0],
          [240, 0],
          [240, 180],
          [0, 180],
        ],
      },
    },
    {
      id: 'avenue-de-la-gare',
      kind: 'street',
      name: 'avenue de la Gare',
      geometry: {
        type: 'polyline',
        points: [
          [20, 60],
          [220, 60],
        ],
      },
    },
    {
      id: 'rue-des-lilas',
      kind: 'street',
      name: 'rue des Lilas',
      geometry: {
        type: 'polyline',
        points: [
          [60, 20],
          [60, 160],
        ],
      },
    },
    {
      id: 'rue-du-port',
      kind: 'street',
      name: 'rue du Port',
      geometry: {
        type: 'polyline',
        points: [
          [140, 20],
          [140, 160],
        ],
      },
    },
    {
      id: 'boulevard-du-nord',
      kind: 'street',
      name: 'boulevard du Nord',
      geometry: {
        type: 'polyline',
        points: [
          [20, 30],
          [220, 30],
        ],
      },
    },
    {
      id: 'rue-basse',
      kind: 'street',
      name: 'rue Basse',
      geometry: {
        type: 'polyline',
        points: [
          [20, 130],
          [220, 130],
        ],
      },
    },
    {
      id: 'allee-des-tilleuls',
      kind: 'street',
      name: 'allée des Tilleuls',
      geometry: {
        type: 'polyline',
        points: [
          [170, 20],
          [190, 45],
          [220, 70],
        ],
      },
    },
    {
      id: 'gare',
      kind: 'poi',
      name: 'gare',
      geometry: { type: 'point', x: 40, y: 75 },
    },
    {
      id: 'musee',
      kind: 'poi',
      name: 'musée',
      geometry: { type: 'point', x: 90, y: 100 },
      description: "exposition d'histoire locale",
    },
    {
      id: 'mairie',
      kind: 'poi',
      name: 'mairie',
      geometry: { type: 'point', x: 160, y: 90 },
    },
    {
      id: 'ecole',
      kind: 'poi',
      name: 'école',
      geometry: { type: 'point', x: 50, y: 110 },
    },
    {
      id: 'parc',
      kind: 'poi',
      name: 'parc',
      geometry: { type: 'point', x: 200, y: 40 },
    },
    {
      id: 'eglise',
      kind: 'poi',
      name: 'église',
      geometry: { type: 'point', x: 110, y: 25 },
    },
    {
      id: 'riviere-claire',
      kind: 'river',
      name: 'rivière Claire',
      geometry: {
        type: 'polyline',
        points: [
          [20, 160],
          [70, 145],
          [120, 150],
          [170, 140],
          [220, 150],
        ],
      },
    },
  ],
  mode: 'double_tap',
  params: [300, 8, 400, 15],
};
