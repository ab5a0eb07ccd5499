"""Two-player zero-sum extensive-form games.

A game tree is assembled from lightweight builder nodes (``decision``,
``chance``, ``terminal``) and flattened into :class:`GameTree`, which stores
the tree in flat numpy arrays so that large benchmark games (hundreds of
thousands of nodes) stay cheap to index and traverse.  On top of the tree we
derive the sequence-form view: a per-player treeplex (:class:`PlayerSequences`)
and a sparse utility matrix whose bilinear form ``x . A y`` equals the
expected utility of the row player.

Player 1 is the row player (maximizer), player 2 the column player; terminal
nodes store only the row player's utility because the game is zero-sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

PLAYER1 = 0
PLAYER2 = 1
CHANCE = 2
TERMINAL = 3

# Aggregated utility cells smaller than this are treated as exact zeros and
# dropped from the sparse matrix, so float noise cannot inflate nnz.
_ZERO_CELL = 1e-15


class GameStructureError(ValueError):
    """Raised when a game violates a structural requirement (e.g. recall)."""


# ---------------------------------------------------------------------------
# Builder nodes
# ---------------------------------------------------------------------------


@dataclass(slots=True)
class _DecisionNode:
    player: int
    obs: tuple[str, ...]
    public: str
    actions: tuple[str, ...]
    children: list


@dataclass(slots=True)
class _ChanceNode:
    labels: tuple[str, ...]
    probs: tuple[float, ...]
    children: list


@dataclass(slots=True)
class _TerminalNode:
    u1: float


def decision(player, obs, public, actions, children):
    """Decision node for ``player`` (0 or 1).

    ``obs`` is the tuple of observation tokens private to the player (these
    are the components an abstraction may relabel) and ``public`` the public
    action history; together with the player they identify the infoset.
    """
    obs = tuple(obs)
    actions = tuple(actions)
    if player not in (PLAYER1, PLAYER2):
        raise ValueError(f"player must be 0 or 1, got {player}")
    if len(actions) != len(children):
        raise ValueError("one child per action required")
    if not actions:
        raise ValueError("decision node needs at least one action")
    return _DecisionNode(player, obs, public, actions, list(children))


def chance(outcomes):
    """Chance node from ``(label, probability, child)`` outcome triples."""
    labels, probs, children = [], [], []
    for label, prob, child in outcomes:
        labels.append(label)
        probs.append(float(prob))
        children.append(child)
    if not labels:
        raise ValueError("chance node needs at least one outcome")
    return _ChanceNode(tuple(labels), tuple(probs), children)


def terminal(u1):
    """Terminal node holding the row player's utility (u2 = -u1)."""
    return _TerminalNode(float(u1))


def infoset_key(player, obs, public):
    """Canonical string key for an infoset."""
    return f"p{player + 1}:{','.join(obs)}:{public}"


# ---------------------------------------------------------------------------
# Flattened game
# ---------------------------------------------------------------------------


@dataclass(slots=True)
class Infoset:
    """One information set: acting player, observations, action list.

    ``parent`` is the (infoset id, action index) of the same player's previous
    decision on every path to this infoset, or None at the player's root; it
    is well defined exactly when the game has perfect recall.
    """

    player: int
    obs: tuple[str, ...]
    public: str
    actions: tuple[str, ...]
    parent: tuple[int, int] | None

    @property
    def key(self) -> str:
        return infoset_key(self.player, self.obs, self.public)


class GameTree:
    """Immutable flattened extensive-form game.

    Nodes are numbered in depth-first preorder (root = 0).  Per-node data
    lives in flat arrays; outgoing edges of node ``i`` occupy the slice
    ``edge_ofs[i]:edge_ofs[i+1]`` of the edge arrays.  Decision-node edges are
    ordered like the infoset's action list; chance-node edges carry outcome
    probabilities and labels.

    Instances are immutable after construction and safe to share across
    threads; derived structures (sequence index, utility matrix) are cached.
    """

    def __init__(self, name=""):
        self.name = name
        self.actor = None  # int8[num_nodes]
        self.node_infoset = None  # int32[num_nodes], -1 unless decision
        self.u1 = None  # float64[num_nodes], 0 unless terminal
        self.edge_ofs = None  # int64[num_nodes + 1]
        self.edge_child = None  # int32[num_edges]
        self.edge_label = None  # int32[num_edges] into .labels
        self.edge_prob = None  # float64[num_edges], chance edges only
        self.labels = []  # edge label strings
        self.infosets = []  # list[Infoset]
        self._recall_conflicts = []  # (infoset key, str description)
        # Terminal context: for every terminal node, the last (infoset,
        # action index) of each player on the path plus the chance reach.
        self.term_node = None
        self.term_row_inf = None
        self.term_row_act = None
        self.term_col_inf = None
        self.term_col_act = None
        self.term_reach = None
        self.term_u1 = None
        self._seq_index = None
        self._matrix = None

    # -- construction -------------------------------------------------------

    @classmethod
    def from_root(cls, root, name="") -> "GameTree":
        """Flatten a builder-node tree into a GameTree."""
        game = cls(name=name)
        actor, node_infoset, u1 = [], [], []
        edge_counts = []
        edge_child, edge_label_ids, edge_prob = [], [], []
        labels = []
        label_ids: dict[str, int] = {}
        infosets: list[Infoset] = []
        infoset_ids: dict[tuple, int] = {}
        conflicts = []
        t_node, t_ri, t_ra, t_ci, t_ca, t_reach, t_u1 = [], [], [], [], [], [], []

        def label_id(text):
            lid = label_ids.get(text)
            if lid is None:
                lid = len(labels)
                label_ids[text] = lid
                labels.append(text)
            return lid

        # Stack entries: (builder node, edge slot to patch or -1,
        #                 (p1 infoset, p1 action), (p2 ...), chance reach).
        stack = [(root, -1, (-1, -1), (-1, -1), 1.0)]
        while stack:
            node, patch, ctx1, ctx2, reach = stack.pop()
            nid = len(actor)
            if patch >= 0:
                edge_child[patch] = nid
            if isinstance(node, _TerminalNode):
                actor.append(TERMINAL)
                node_infoset.append(-1)
                u1.append(node.u1)
                edge_counts.append(0)
                t_node.append(nid)
                t_ri.append(ctx1[0])
                t_ra.append(ctx1[1])
                t_ci.append(ctx2[0])
                t_ca.append(ctx2[1])
                t_reach.append(reach)
                t_u1.append(node.u1)
                continue
            if isinstance(node, _ChanceNode):
                actor.append(CHANCE)
                node_infoset.append(-1)
                u1.append(0.0)
                edge_counts.append(len(node.children))
                base = len(edge_child)
                for lab, p in zip(node.labels, node.probs):
                    edge_child.append(-1)
                    edge_label_ids.append(label_id(lab))
                    edge_prob.append(p)
                for off in reversed(range(len(node.children))):
                    stack.append(
                        (node.children[off], base + off, ctx1, ctx2,
                         reach * node.probs[off])
                    )
                continue
            # Decision node.
            ikey = (node.player, node.obs, node.public)
            ctx = ctx1 if node.player == PLAYER1 else ctx2
            parent = None if ctx == (-1, -1) else ctx
            iid = infoset_ids.get(ikey)
            if iid is None:
                iid = len(infosets)
                infoset_ids[ikey] = iid
                infosets.append(
                    Infoset(node.player, node.obs, node.public, node.actions,
                            parent)
                )
            else:
                rec = infosets[iid]
                if rec.parent != parent:
                    conflicts.append(
                        (rec.key,
                         f"nodes reach infoset via different own-action "
                         f"histories ({rec.parent} vs {parent})")
                    )
            actor.append(node.player)
            node_infoset.append(iid)
            u1.append(0.0)
            edge_counts.append(len(node.children))
            base = len(edge_child)
            for act in node.actions:
                edge_child.append(-1)
                edge_label_ids.append(label_id(act))
                edge_prob.append(0.0)
            for off in reversed(range(len(node.children))):
                link = (iid, off)
                c1 = link if node.player == PLAYER1 else ctx1
                c2 = link if node.player == PLAYER2 else ctx2
                stack.append((node.children[off], base + off, c1, c2, reach))

        game.actor = np.asarray(actor, dtype=np.int8)
        game.node_infoset = np.asarray(node_infoset, dtype=np.int32)
        game.u1 = np.asarray(u1, dtype=np.float64)
        game.edge_ofs = np.zeros(len(actor) + 1, dtype=np.int64)
        np.cumsum(edge_counts, out=game.edge_ofs[1:])
        game.edge_child = np.asarray(edge_child, dtype=np.int32)
        game.edge_label = np.asarray(edge_label_ids, dtype=np.int32)
        game.edge_prob = np.asarray(edge_prob, dtype=np.float64)
        game.labels = labels
        game.infosets = infosets
        game._recall_conflicts = conflicts
        game.term_node = np.asarray(t_node, dtype=np.int64)
        game.term_row_inf = np.asarray(t_ri, dtype=np.int32)
        game.term_row_act = np.asarray(t_ra, dtype=np.int32)
        game.term_col_inf = np.asarray(t_ci, dtype=np.int32)
        game.term_col_act = np.asarray(t_ca, dtype=np.int32)
        game.term_reach = np.asarray(t_reach, dtype=np.float64)
        game.term_u1 = np.asarray(t_u1, dtype=np.float64)
        return game

    def _relabeled(self, new_infosets, remap, name=""):
        """Sibling game sharing node/edge arrays, with infosets remapped."""
        game = GameTree(name=name or self.name)
        game.actor = self.actor
        game.u1 = self.u1
        game.edge_ofs = self.edge_ofs
        game.edge_child = self.edge_child
        game.edge_label = self.edge_label
        game.edge_prob = self.edge_prob
        game.labels = self.labels
        game.infosets = new_infosets
        remap = np.asarray(remap, dtype=np.int32)
        mask = self.node_infoset >= 0
        node_inf = np.full_like(self.node_infoset, -1)
        node_inf[mask] = remap[self.node_infoset[mask]]
        game.node_infoset = node_inf
        game.term_node = self.term_node
        game.term_row_act = self.term_row_act
        game.term_col_act = self.term_col_act
        game.term_reach = self.term_reach
        game.term_u1 = self.term_u1

        def remap_terms(arr):
            out = arr.copy()
            m = out >= 0
            out[m] = remap[out[m]]
            return out

        game.term_row_inf = remap_terms(self.term_row_inf)
        game.term_col_inf = remap_terms(self.term_col_inf)
        game._recall_conflicts = list(self._recall_conflicts)
        return game

    # -- basic accessors -----------------------------------------------------

    @property
    def num_nodes(self) -> int:
        return len(self.actor)

    @property
    def num_terminals(self) -> int:
        return len(self.term_node)

    def children(self, node):
        lo, hi = self.edge_ofs[node], self.edge_ofs[node + 1]
        return self.edge_child[lo:hi]

    def edge_labels(self, node):
        lo, hi = self.edge_ofs[node], self.edge_ofs[node + 1]
        return [self.labels[i] for i in self.edge_label[lo:hi]]

    def chance_probs(self, node):
        lo, hi = self.edge_ofs[node], self.edge_ofs[node + 1]
        return self.edge_prob[lo:hi]

    def infoset_of(self, node) -> Infoset:
        return self.infosets[self.node_infoset[node]]

    def infoset_keys(self, player=None):
        return [
            inf.key for inf in self.infosets
            if player is None or inf.player == player
        ]

    # -- cached derived structures -------------------------------------------

    def sequence_index(self) -> "SequenceIndex":
        if self._seq_index is None:
            self._seq_index = index_sequences(self)
        return self._seq_index

    def utility_matrix(self) -> "SparseUtilityMatrix":
        if self._matrix is None:
            self._matrix = build_utility_matrix(self, self.sequence_index())
        return self._matrix


# ---------------------------------------------------------------------------
# Sequence form
# ---------------------------------------------------------------------------


@dataclass(slots=True)
class _Level:
    """Infosets of one treeplex depth, with flattened sequence ranges."""

    inf_local: np.ndarray  # local infoset positions at this level
    seq_ids: np.ndarray  # their sequence ids, concatenated in order
    starts: np.ndarray  # segment starts into seq_ids, one per infoset
    nact: np.ndarray  # actions per infoset
    pid: np.ndarray  # parent sequence id per infoset
    rep_pid: np.ndarray  # pid repeated per action, aligned with seq_ids


class PlayerSequences:
    """Sequence-form structure (treeplex) of one player.

    Sequence 0 is the empty sequence.  Each infoset owns a contiguous block
    of sequence ids, one per action, assigned in depth-first infoset
    discovery order; ``dimension`` counts all sequences including the empty
    one.
    """

    def __init__(self, player, game: GameTree):
        self.player = player
        local = [
            i for i, inf in enumerate(game.infosets) if inf.player == player
        ]
        self.global_ids = np.asarray(local, dtype=np.int32)
        self._local_of_global = {g: l for l, g in enumerate(local)}
        n_inf = len(local)
        self.keys = [game.infosets[g].key for g in local]
        self.actions = [game.infosets[g].actions for g in local]
        self.num_actions = np.asarray(
            [len(a) for a in self.actions], dtype=np.int32
        )
        self.first_seq = np.zeros(n_inf, dtype=np.int32)
        nxt = 1
        for i in range(n_inf):
            self.first_seq[i] = nxt
            nxt += self.num_actions[i]
        self.dimension = int(nxt)
        self.parent_seq = np.zeros(n_inf, dtype=np.int32)
        self.level = np.zeros(n_inf, dtype=np.int32)
        for i, g in enumerate(local):
            parent = game.infosets[g].parent
            if parent is None:
                self.parent_seq[i] = 0
                self.level[i] = 0
            else:
                pg, act = parent
                pl = self._local_of_global.get(pg)
                if pl is None or pl >= i:
                    raise GameStructureError(
                        f"infoset {self.keys[i]} has an invalid parent link"
                    )
                self.parent_seq[i] = self.first_seq[pl] + act
                self.level[i] = self.level[pl] + 1
        # Per-sequence lookups (sequence 0 maps to -1).
        self.seq_infoset = np.full(self.dimension, -1, dtype=np.int32)
        self.seq_parent = np.full(self.dimension, -1, dtype=np.int32)
        for i in range(n_inf):
            lo = self.first_seq[i]
            hi = lo + self.num_actions[i]
            self.seq_infoset[lo:hi] = i
            self.seq_parent[lo:hi] = self.parent_seq[i]
        self._key_to_local = {k: i for i, k in enumerate(self.keys)}
        self.levels = self._build_levels()

    def _build_levels(self):
        levels = []
        depth = int(self.level.max()) + 1 if len(self.level) else 0
        for lv in range(depth):
            inf_local = np.flatnonzero(self.level == lv).astype(np.int32)
            nact = self.num_actions[inf_local]
            starts = np.zeros(len(inf_local), dtype=np.int64)
            np.cumsum(nact[:-1], out=starts[1:])
            seq_ids = np.concatenate(
                [
                    np.arange(self.first_seq[i], self.first_seq[i] + self.num_actions[i])
                    for i in inf_local
                ]
            ).astype(np.int64) if len(inf_local) else np.zeros(0, np.int64)
            pid = self.parent_seq[inf_local].astype(np.int64)
            rep_pid = np.repeat(pid, nact)
            levels.append(_Level(inf_local, seq_ids, starts, nact, pid, rep_pid))
        return levels

    # -- key-based views (the public mapping surface) -------------------------

    def parent_sequence(self, key: str) -> int:
        return int(self.parent_seq[self._key_to_local[key]])

    def sequence_id(self, key: str, action: str) -> int:
        i = self._key_to_local[key]
        return int(self.first_seq[i] + self.actions[i].index(action))

    @property
    def infoset_parents(self) -> dict[str, int]:
        return {k: int(self.parent_seq[i]) for i, k in enumerate(self.keys)}

    @property
    def sequence_ids(self) -> dict[tuple[str, str], int]:
        out = {}
        for i, k in enumerate(self.keys):
            for a_idx, a in enumerate(self.actions[i]):
                out[(k, a)] = int(self.first_seq[i] + a_idx)
        return out

    def num_infosets(self) -> int:
        return len(self.keys)

    # -- strategy conversions --------------------------------------------------

    def behavior_to_sequence(self, strategy: dict[str, np.ndarray]) -> np.ndarray:
        """Realization-weight vector of a behavioral strategy (exact by
        perfect recall)."""
        sigma = self._sigma_vector(strategy)
        return self.realization(sigma)

    def _sigma_vector(self, strategy):
        sigma = np.zeros(self.dimension)
        for i, k in enumerate(self.keys):
            if k not in strategy:
                raise KeyError(f"strategy missing infoset {k}")
            probs = np.asarray(strategy[k], dtype=np.float64)
            if len(probs) != self.num_actions[i]:
                raise ValueError(f"wrong action count at infoset {k}")
            lo = self.first_seq[i]
            sigma[lo:lo + len(probs)] = probs
        return sigma

    def realization(self, sigma: np.ndarray) -> np.ndarray:
        """Sequence weights x with x[s] = sigma[s] * x[parent(s)]."""
        x = np.zeros(self.dimension)
        x[0] = 1.0
        for lvl in self.levels:
            x[lvl.seq_ids] = sigma[lvl.seq_ids] * x[lvl.rep_pid]
        return x

    def sequence_to_behavior(self, x: np.ndarray) -> dict[str, np.ndarray]:
        """Behavioral strategy realization-equivalent to ``x`` (uniform at
        infosets with zero reach)."""
        out = {}
        for i, k in enumerate(self.keys):
            lo = self.first_seq[i]
            hi = lo + self.num_actions[i]
            mass = x[lo:hi]
            tot = mass.sum()
            if tot > 0:
                out[k] = mass / tot
            else:
                out[k] = np.full(hi - lo, 1.0 / (hi - lo))
        return out

    def check_flow(self, x: np.ndarray, tol=1e-9) -> bool:
        """True when x satisfies the treeplex flow constraints within tol."""
        if len(x) != self.dimension or abs(x[0] - 1.0) > tol:
            return False
        if np.any(x < -tol):
            return False
        for lvl in self.levels:
            sums = np.add.reduceat(x[lvl.seq_ids], lvl.starts) if len(
                lvl.seq_ids
            ) else np.zeros(0)
            if np.any(np.abs(sums - x[lvl.pid]) > tol):
                return False
        return True


@dataclass
class SequenceIndex:
    """Both players' sequence-form structures for one game."""

    row: PlayerSequences
    col: PlayerSequences

    def for_player(self, player) -> PlayerSequences:
        return self.row if player == PLAYER1 else self.col


def index_sequences(game: GameTree) -> SequenceIndex:
    """Build the sequence index; raises on imperfect recall."""
    if game._recall_conflicts:
        key, why = game._recall_conflicts[0]
        raise GameStructureError(f"imperfect recall at infoset {key}: {why}")
    return SequenceIndex(
        PlayerSequences(PLAYER1, game), PlayerSequences(PLAYER2, game)
    )


# ---------------------------------------------------------------------------
# Sparse utility matrix
# ---------------------------------------------------------------------------


@dataclass
class SparseUtilityMatrix:
    """Row-player utilities aggregated over terminals per sequence pair.

    ``values[k]`` is the sum of chance-reach * u1 over all terminals whose
    last row/column sequences are ``rows[k]`` / ``cols[k]``.  Cells that
    aggregate to (numerical) zero are not stored.
    """

    shape: tuple[int, int]
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray
    _csr: sp.csr_matrix | None = field(default=None, repr=False)
    _csr_t: sp.csr_matrix | None = field(default=None, repr=False)

    @property
    def nnz(self) -> int:
        return len(self.values)

    def entries(self):
        return zip(self.rows.tolist(), self.cols.tolist(), self.values.tolist())

    def tocsr(self) -> sp.csr_matrix:
        if self._csr is None:
            self._csr = sp.csr_matrix(
                (self.values, (self.rows, self.cols)), shape=self.shape
            )
        return self._csr

    def tocsr_t(self) -> sp.csr_matrix:
        if self._csr_t is None:
            self._csr_t = self.tocsr().T.tocsr()
        return self._csr_t


def _terminal_sequences(game: GameTree, index: SequenceIndex):
    """Row/column sequence id per terminal (0 when the player never acted)."""

    def seqs(ps: PlayerSequences, inf, act):
        first = np.zeros(len(game.infosets), dtype=np.int64)
        first[ps.global_ids] = ps.first_seq
        out = np.zeros(len(inf), dtype=np.int64)
        m = inf >= 0
        out[m] = first[inf[m]] + act[m]
        return out

    r = seqs(index.row, game.term_row_inf, game.term_row_act)
    c = seqs(index.col, game.term_col_inf, game.term_col_act)
    return r, c


def build_utility_matrix(game: GameTree, index: SequenceIndex) -> SparseUtilityMatrix:
    """Aggregate chance-reach-weighted terminal utilities per sequence pair."""
    rows, cols = _terminal_sequences(game, index)
    vals = game.term_reach * game.term_u1
    shape = (index.row.dimension, index.col.dimension)
    coo = sp.coo_matrix((vals, (rows, cols)), shape=shape)
    csr = coo.tocsr()
    csr.sum_duplicates()
    csr.data[np.abs(csr.data) < _ZERO_CELL] = 0.0
    csr.eliminate_zeros()
    back = csr.tocoo()
    return SparseUtilityMatrix(
        shape=shape,
        rows=back.row.astype(np.int64),
        cols=back.col.astype(np.int64),
        values=back.data.astype(np.float64),
        _csr=csr,
    )


def expected_utility(matrix: SparseUtilityMatrix, x: np.ndarray, y: np.ndarray) -> float:
    """Row-player expected utility x . A y of sequence-form strategies."""
    if len(x) != matrix.shape[0] or len(y) != matrix.shape[1]:
        raise ValueError(
            f"dimension mismatch: matrix {matrix.shape}, x {len(x)}, y {len(y)}"
        )
    return float(x @ (matrix.tocsr() @ y))


@dataclass(frozen=True)
class SizeMetrics:
    """Game size: total sequence count and utility-matrix nonzeros."""

    num_sequences: int
    nnz: int

    def __le__(self, other):
        return (
            self.num_sequences <= other.num_sequences and self.nnz <= other.nnz
        )


def size_metrics(game: GameTree) -> SizeMetrics:
    index = game.sequence_index()
    matrix = game.utility_matrix()
    return SizeMetrics(
        num_sequences=index.row.dimension + index.col.dimension,
        nnz=matrix.nnz,
    )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_game(game: GameTree, tol=1e-12) -> list[str]:
    """Check every structural invariant; returns all violations ([] = ok)."""
    violations = []
    # Chance outcome distributions sum to 1.
    chance_nodes = np.flatnonzero(game.actor == CHANCE)
    for n in chance_nodes:
        lo, hi = game.edge_ofs[n], game.edge_ofs[n + 1]
        probs = game.edge_prob[lo:hi]
        if np.any(probs < 0) or not np.all(np.isfinite(probs)):
            violations.append(f"chance node {n} has invalid probabilities")
        elif abs(probs.sum() - 1.0) > tol:
            violations.append(
                f"chance node {n} outcome probabilities sum to {probs.sum()!r}"
            )
    # Decision nodes agree with their infoset's action list.
    counts = np.diff(game.edge_ofs)
    dec = np.flatnonzero((game.actor == PLAYER1) | (game.actor == PLAYER2))
    if len(dec):
        nact = np.asarray(
            [len(inf.actions) for inf in game.infosets], dtype=np.int64
        )
        bad = dec[counts[dec] != nact[game.node_infoset[dec]]]
        for n in bad[:20]:
            violations.append(
                f"node {n} action count differs from infoset "
                f"{game.infoset_of(n).key}"
            )
        ok = dec[counts[dec] == nact[game.node_infoset[dec]]]
        max_act = int(nact.max()) if len(nact) else 0
        act_label = np.full((len(game.infosets), max_act), -1, dtype=np.int64)
        label_of = {lab: i for i, lab in enumerate(game.labels)}
        for i, inf in enumerate(game.infosets):
            for j, a in enumerate(inf.actions):
                act_label[i, j] = label_of.get(a, -2)
        for pos in range(max_act):
            sub = ok[counts[ok] > pos]
            if not len(sub):
                continue
            got = game.edge_label[game.edge_ofs[sub] + pos]
            want = act_label[game.node_infoset[sub], pos]
            for n in sub[got != want][:20]:
                violations.append(
                    f"node {n} action labels differ from infoset "
                    f"{game.infoset_of(n).key}"
                )
    # Perfect recall (conflicts recorded during flattening).
    for key, why in game._recall_conflicts:
        violations.append(f"imperfect recall at infoset {key}: {why}")
    # Finite terminal utilities.
    if not np.all(np.isfinite(game.term_u1)):
        violations.append("non-finite terminal utility")
    return violations
