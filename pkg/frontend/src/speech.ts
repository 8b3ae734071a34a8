// Optional spoken output through the browser's built-in synthesis. The
// text feed stays the source of truth; this is best-effort and silent
// where the API is missing.

export function speechAvailable(): boolean {
  return typeof window !== 'undefined' && 'speechSynthesis' in window;
}

// A new announcement interrupts whatever is still being spoken, mirroring
// the server's interruption semantics.
export function speak(text: string): void {
  if (!speechAvailable()) return;
  const synth = window.speechSynthesis;
  synth.cancel();
  synth.speak(new SpeechSynthesisUtterance(text));
}
