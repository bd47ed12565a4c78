// Typed client for the play service. All game outcomes come from the
// service; the client never resolves rounds itself.

export type ActionName = 'rock' | 'paper';

export interface Resolution {
  kind: 'repeat' | 'winner' | 'split_two' | 'continue';
  eliminated: number[];
  winner?: number;
  pair?: number[];
  survivors?: number[];
}

export interface RoundResult {
  state: number[];
  actions: Record<string, ActionName>;
  resolution: Resolution;
  eliminated: number[];
}

export interface StateView {
  survivors: number[];
  human_id: number;
}

export interface CreateResponse {
  session_id: string;
  state: StateView;
}

export interface ActionResponse {
  round: RoundResult;
  state: StateView;
  status: 'ongoing' | 'finished';
  payoffs?: Record<string, number>;
}

export interface SessionView {
  session_id: string;
  universe: number;
  human_id: number;
  state: StateView;
  status: 'ongoing' | 'finished';
  round_count: number;
  history: RoundResult[];
  payoffs: Record<string, number> | null;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const res = await fetch(base + path, {
    headers: { 'Content-Type': 'application/json' },
    ...init,
  });
  if (!res.ok) {
    const detail = await res.text().catch(() => '');
    throw new ApiError(res.status, detail || `request failed: ${res.status}`);
  }
  if (res.status === 204) return undefined as T;
  return (await res.json()) as T;
}

export class GameApi {
  constructor(readonly base: string) {}

  createGame(players: number, botProfile: string | object, seed?: number): Promise<CreateResponse> {
    return request(this.base, '/games', {
      method: 'POST',
      body: JSON.stringify({ players, bot_profile: botProfile, seed }),
    });
  }

  submitAction(sessionId: string, action: ActionName): Promise<ActionResponse> {
    return request(this.base, `/games/${sessionId}/action`, {
      method: 'POST',
      body: JSON.stringify({ action }),
    });
  }

  getGame(sessionId: string): Promise<SessionView> {
    return request(this.base, `/games/${sessionId}`);
  }

  deleteGame(sessionId: string): Promise<void> {
    return request(this.base, `/games/${sessionId}`, { method: 'DELETE' });
  }

  getPhi(n: number): Promise<{ n: number; phi: number }> {
    return request(this.base, `/phi?n=${n}`);
  }
}
