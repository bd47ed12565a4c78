// Pure view-model: turns service responses into what the page shows.
// Players stand while surviving and sit when eliminated, mirroring how the
// game is run in a room full of people.

import type { RoundResult, SessionView } from './api';

export interface PlayerView {
  id: number;
  isHuman: boolean;
  standing: boolean;
}

export interface RoundLogEntry {
  index: number;
  survivors: number[];
  actions: Record<string, string>;
  kind: string;
  winner?: number;
  pair?: number[];
  eliminated: number[];
  summary: string;
}

export type HumanStatus = 'playing' | 'eliminated' | 'winner' | 'split' | 'lost';

export interface ClientGameView {
  sessionId: string;
  universe: number;
  humanId: number;
  players: PlayerView[];
  roundLog: RoundLogEntry[];
  status: 'ongoing' | 'finished';
  humanStatus: HumanStatus;
  payoffs: Record<string, number> | null;
  phiHint: number | null;
  hintVisible: boolean;
}

export function describeRound(round: RoundResult, humanId: number): string {
  const res = round.resolution;
  switch (res.kind) {
    case 'repeat':
      return 'Everyone showed the same — repeat the round!';
    case 'winner':
      return res.winner === humanId ? 'You win!' : `Player ${res.winner} wins!`;
    case 'split_two': {
      const pair = res.pair ?? [];
      const names = pair.map(p => (p === humanId ? 'you' : `player ${p}`)).join(' and ');
      return `Two players left: ${names} split the prize.`;
    }
    case 'continue':
      return `Papers out: ${round.eliminated.join(', ')} eliminated.`;
  }
}

export function roundLogEntry(round: RoundResult, index: number, humanId: number): RoundLogEntry {
  return {
    index,
    survivors: round.state,
    actions: round.actions,
    kind: round.resolution.kind,
    winner: round.resolution.winner,
    pair: round.resolution.pair,
    eliminated: round.eliminated,
    summary: describeRound(round, humanId),
  };
}

export function humanStatusOf(view: SessionView): HumanStatus {
  const human = view.human_id;
  if (view.status === 'ongoing') {
    return view.state.survivors.includes(human) ? 'playing' : 'eliminated';
  }
  const payoff = view.payoffs?.[String(human)] ?? 0;
  if (payoff === 1) return 'winner';
  if (payoff > 0) return 'split';
  return 'lost';
}

export function buildGameView(
  view: SessionView,
  phiHint: number | null = null,
  hintVisible = false,
): ClientGameView {
  const standing = new Set(view.state.survivors);
  const players: PlayerView[] = [];
  for (let id = 0; id < view.universe; id++) {
    players.push({
      id,
      isHuman: id === view.human_id,
      standing: view.status === 'ongoing' && standing.has(id),
    });
  }
  return {
    sessionId: view.session_id,
    universe: view.universe,
    humanId: view.human_id,
    players,
    roundLog: view.history.map((r, i) => roundLogEntry(r, i + 1, view.human_id)),
    status: view.status,
    humanStatus: humanStatusOf(view),
    payoffs: view.payoffs,
    phiHint,
    hintVisible,
  };
}

export function validatePlayerCount(players: number): string | null {
  if (!Number.isInteger(players) || players < 3) {
    return 'The game needs at least three players.';
  }
  if (players > 12) {
    return 'At most 12 players are supported.';
  }
  return null;
}

export function formatPhiHint(n: number, phi: number): string {
  return `Equilibrium paper probability with ${n} players: ${phi.toFixed(3)}`;
}
