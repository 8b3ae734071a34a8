import { describe, expect, test } from 'vitest';

import { fmtNum, sessionCsv } from '../src/csv.js';

describe('fmtNum', () => {
  test('integral values print without a decimal part', () => {
    expect(fmtNum(100)).toBe('100');
    expect(fmtNum(0)).toBe('0');
    expect(fmtNum(8)).toBe('8');
    expect(fmtNum(-3)).toBe('-3');
  });

  test('fractional values keep their shortest decimal form', () => {
    expect(fmtNum(100.25)).toBe('100.25');
    expect(fmtNum(0.1)).toBe('0.1');
    expect(fmtNum(-42.5)).toBe('-42.5');
    expect(fmtNum(147.5)).toBe('147.5');
  });
});

describe('sessionCsv', () => {
  const header = {
    mapName: 'carte fictive',
    mode: 'double_tap',
    params: [300, 8, 400, 15] as [number, number, number, number],
  };

  test('header-only export', () => {
    expect(sessionCsv(header, [])).toBe(
      '# map=carte fictive\n' +
        '# cal=1,0,0,0,1,0\n' +
        '# mode=double_tap\n' +
        '# params=300,8,400,15\n' +
        'timestamp_ms,contact_id,phase,x,y\n',
    );
  });

  test('events append one row each, exact bytes', () => {
    const events = [
      { t: 0, id: 0, phase: 'down' as const, x: 100, y: 100.25 },
      { t: 120, id: 0, phase: 'up' as const, x: 100, y: 100.25 },
    ];
    const csv = sessionCsv(header, events);
    expect(csv.endsWith('\n')).toBe(true);
    expect(csv.split('\n').slice(5, 7)).toEqual([
      '0,0,down,100,100.25',
      '120,0,up,100,100.25',
    ]);
  });

  test('params with fractional values survive formatting', () => {
    const csv = sessionCsv({ ...header, params: [200, 5.5, 300, 12.25] }, []);
    expect(csv).toContain('# params=200,5.5,300,12.25\n');
  });
});
