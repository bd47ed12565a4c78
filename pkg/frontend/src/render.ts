// DOM rendering for the game view. Everything displayed is read from the
// ClientGameView; nothing here computes outcomes.

import type { ClientGameView, RoundLogEntry } from './view';
import { formatPhiHint } from './view';

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderPlayer(view: ClientGameView, playerId: number): HTMLElement {
  const player = view.players[playerId];
  const box = el('div', `player ${player.standing ? 'standing' : 'seated'}`);
  box.appendChild(el('div', 'avatar', player.standing ? '🧍' : '🪑'));
  box.appendChild(el('div', 'label', player.isHuman ? 'You' : `Player ${player.id}`));
  return box;
}

function renderRound(entry: RoundLogEntry): HTMLElement {
  const row = el('div', 'round');
  row.appendChild(el('span', 'round-index', `Round ${entry.index}`));
  const actions = entry.survivors
    .map(p => `${p}:${entry.actions[String(p)] === 'paper' ? '✋' : '✊'}`)
    .join(' ');
  row.appendChild(el('span', 'round-actions', actions));
  row.appendChild(el('span', 'round-summary', entry.summary));
  return row;
}

function bannerFor(view: ClientGameView): string | null {
  switch (view.humanStatus) {
    case 'winner':
      return '🏆 You are the last one standing — payoff 1!';
    case 'split':
      return '🤝 Two left standing: classic rock-paper-scissors for fun, but the prize is split ½ each.';
    case 'eliminated':
      return 'You are out — sit down and watch the bots finish.';
    case 'lost':
      return view.status === 'finished' ? 'Game over — a bot takes the prize.' : null;
    default:
      return null;
  }
}

export function render(root: HTMLElement, view: ClientGameView): void {
  root.textContent = '';

  const stage = el('div', 'stage');
  for (const player of view.players) {
    stage.appendChild(renderPlayer(view, player.id));
  }
  root.appendChild(stage);

  const banner = bannerFor(view);
  if (banner) root.appendChild(el('div', 'banner', banner));

  if (view.hintVisible && view.phiHint !== null) {
    root.appendChild(
      el('div', 'hint', formatPhiHint(view.players.filter(p => p.standing).length || view.universe, view.phiHint)),
    );
  }

  const log = el('div', 'round-log');
  for (const entry of view.roundLog) log.appendChild(renderRound(entry));
  root.appendChild(log);

  if (view.status === 'finished' && view.payoffs) {
    const payoffs = el('div', 'payoffs');
    payoffs.appendChild(el('h3', undefined, 'Final payoffs'));
    for (const [player, value] of Object.entries(view.payoffs)) {
      const label = Number(player) === view.humanId ? 'You' : `Player ${player}`;
      payoffs.appendChild(el('div', 'payoff', `${label}: ${value}`));
    }
    root.appendChild(payoffs);
  }
}
