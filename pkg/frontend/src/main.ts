// Page wiring: lobby form, action buttons (disabled while a request is in
// flight), and the phi hint toggle.

import { ActionName, GameApi } from './api';
import { render } from './render';
import { buildGameView, validatePlayerCount } from './view';

const params = new URLSearchParams(window.location.search);
const api = new GameApi(params.get('service') ?? 'http://127.0.0.1:8000');

let sessionId: string | null = null;
let hintVisible = false;
let phiHint: number | null = null;
let pending = false;

const root = document.getElementById('game')!;
const errorBox = document.getElementById('error')!;
const lobby = document.getElementById('lobby')!;
const controls = document.getElementById('controls')!;

function setError(message: string | null): void {
  errorBox.textContent = message ?? '';
}

function setPending(value: boolean): void {
  pending = value;
  for (const button of controls.querySelectorAll('button')) {
    (button as HTMLButtonElement).disabled = value;
  }
}

async function refresh(): Promise<void> {
  if (!sessionId) return;
  const view = await api.getGame(sessionId);
  if (hintVisible) {
    const n = view.state.survivors.length;
    if (n >= 3) phiHint = (await api.getPhi(n)).phi;
  }
  render(root, buildGameView(view, phiHint, hintVisible));
  controls.style.display = view.status === 'ongoing' ? 'block' : 'none';
}

async function startGame(): Promise<void> {
  const players = Number((document.getElementById('players') as HTMLInputElement).value);
  const strategy = (document.getElementById('strategy') as HTMLSelectElement).value;
  const seedText = (document.getElementById('seed') as HTMLInputElement).value.trim();
  const problem = validatePlayerCount(players);
  if (problem) {
    setError(problem);
    return;
  }
  setError(null);
  try {
    const created = await api.createGame(players, strategy, seedText ? Number(seedText) : undefined);
    sessionId = created.session_id;
    lobby.style.display = 'none';
    await refresh();
  } catch (err) {
    setError(`Could not start the game: ${(err as Error).message}`);
  }
}

async function play(action: ActionName): Promise<void> {
  if (!sessionId || pending) return;
  setPending(true);
  setError(null);
  try {
    await api.submitAction(sessionId, action);
    await refresh();
  } catch (err) {
    const status = (err as { status?: number }).status;
    setError(status === 409 ? 'The game is already finished.' : `Action failed: ${(err as Error).message}`);
  } finally {
    setPending(false);
  }
}

document.getElementById('start')!.addEventListener('click', () => void startGame());
document.getElementById('play-rock')!.addEventListener('click', () => void play('rock'));
document.getElementById('play-paper')!.addEventListener('click', () => void play('paper'));
document.getElementById('toggle-hint')!.addEventListener('click', () => {
  hintVisible = !hintVisible;
  void refresh();
});
