"""
Graph Model

Encodes a weighted graph into one hypervector. Every node ``v`` gets a random
vector ``H_v`` and a memory ``M_v`` bundling ``bind(W_w, H_u)`` over its
neighbours; the graph vector is the normalized bundle of ``bind(H_v, M_v)``.
Probing the graph vector with ``H_u`` recovers a noisy copy of ``M_u``.
"""

import logging
from typing import Any, Dict, Hashable, List, Optional, Sequence, Set, Tuple

import numpy as np

from hdlearn.arithmetic.classical import sign_with_ties
from hdlearn.encoding import bin_index
from hdlearn.exceptions import InvalidInputError, SelfLoopError, UnknownNodeError
from hdlearn.metrics import MetricsCalculator
from hdlearn.models.base import HDModel
from hdlearn.vector import ACCUMULATOR_DTYPE, BIPOLAR_DTYPE, DEFAULT_DIM

logger = logging.getLogger(__name__)

Edge = Tuple[str, str, Hashable]
EDGE_BATCH = 1024


def quantize_weights(weights: Sequence[float], levels: int,
                     value_range: Optional[Tuple[float, float]] = None) -> List[int]:
    """Map continuous edge weights to ``levels`` weight classes ``0..levels-1``."""
    weights = np.asarray(weights, dtype=np.float64)
    if weights.size == 0:
        return []
    if levels < 1:
        raise InvalidInputError(f"levels must be positive, got {levels}")
    lo, hi = value_range if value_range is not None else (weights.min(), weights.max())
    if hi <= lo:
        return [0] * weights.size
    return bin_index(weights, lo, hi, levels).tolist()


class GraphModel(HDModel):
    """Single-vector encoding of a directed or undirected weighted graph."""

    kind = 5
    name = "graph"

    def __init__(self, dim: int = DEFAULT_DIM, directed: bool = False, seed: int = 0,
                 retain_edges: bool = True):
        super().__init__(dim, seed)
        self.directed = directed
        self.retain_edges = retain_edges

        self.node_index: Dict[str, int] = {}
        self.weight_classes: List[Hashable] = []
        self.node_vectors: Optional[np.ndarray] = None
        self.weight_vectors: Optional[np.ndarray] = None
        self.memories: Optional[np.ndarray] = None
        self.graph_accumulator: Optional[np.ndarray] = None
        self.graph_vector: Optional[np.ndarray] = None
        self.edges: List[Edge] = []
        self.threshold = 0.0

    def config(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "directed": self.directed,
            "seed": self.seed,
            "retain_edges": self.retain_edges,
        }

    @property
    def is_fitted(self) -> bool:
        return self.graph_vector is not None

    @property
    def nodes(self) -> List[str]:
        return list(self.node_index)

    def _seeds(self):
        return np.random.SeedSequence(self.seed).spawn(3)

    def _targets(self) -> np.ndarray:
        """Destination-side node vectors: rotated by one for directed graphs."""
        if self.directed:
            return np.roll(self.node_vectors, 1, axis=1)
        return self.node_vectors

    def _target(self, v: int) -> np.ndarray:
        if self.directed:
            return np.roll(self.node_vectors[v], 1)
        return self.node_vectors[v]

    # ------------------------------------------------------------------
    # fitting
    # ------------------------------------------------------------------

    def _index_edges(self, edges: Sequence[Edge]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        class_index = {w: i for i, w in enumerate(self.weight_classes)}
        sources, targets, weights = [], [], []
        for u, v, w in edges:
            if u == v:
                raise SelfLoopError(f"Self-loops are not supported: {u} -> {v}")
            if w not in class_index:
                raise InvalidInputError(f"Unknown weight class {w!r} on edge {u} -> {v}")
            for node in (u, v):
                if node not in self.node_index:
                    self.node_index[node] = len(self.node_index)
            sources.append(self.node_index[u])
            targets.append(self.node_index[v])
            weights.append(class_index[w])
        return np.array(sources), np.array(targets), np.array(weights)

    def _compress(self):
        """Recompute the graph accumulator from the node memories."""
        self.graph_accumulator = np.zeros(self.dim, dtype=ACCUMULATOR_DTYPE)
        occupied = np.flatnonzero(np.any(self.memories != 0, axis=1))
        normalized = sign_with_ties(self.memories[occupied], self.seed)
        self.graph_accumulator += (self.node_vectors[occupied] * normalized).sum(
            axis=0, dtype=ACCUMULATOR_DTYPE
        )
        self.graph_vector = sign_with_ties(self.graph_accumulator, self.seed)

    def fit(self, edges: Sequence[Edge], weight_alphabet: Optional[Sequence[Hashable]] = None) -> "GraphModel":
        """Build node memories and the graph vector from ``(u, v, weight_class)`` edges."""
        edges = [tuple(edge) for edge in edges]
        if not edges:
            raise InvalidInputError("Cannot build a graph from an empty edge list")

        if weight_alphabet is None:
            weight_alphabet = list(dict.fromkeys(w for _, _, w in edges))
        self.weight_classes = list(weight_alphabet)
        if not self.weight_classes:
            raise InvalidInputError("The weight alphabet is empty")

        self.node_index = {}
        sources, targets, weights = self._index_edges(edges)

        node_seq, weight_seq, _ = self._seeds()
        bipolar = np.array([-1, 1], dtype=BIPOLAR_DTYPE)
        self.node_vectors = np.random.default_rng(node_seq).choice(
            bipolar, size=(len(self.node_index), self.dim)
        )
        self.weight_vectors = np.random.default_rng(weight_seq).choice(
            bipolar, size=(len(self.weight_classes), self.dim)
        )

        hosts = self._targets()
        self.memories = np.zeros((len(self.node_index), self.dim), dtype=ACCUMULATOR_DTYPE)
        for start in range(0, len(edges), EDGE_BATCH):
            batch = slice(start, start + EDGE_BATCH)
            np.add.at(self.memories, sources[batch],
                      self.weight_vectors[weights[batch]] * hosts[targets[batch]])
            if not self.directed:
                np.add.at(self.memories, targets[batch],
                          self.weight_vectors[weights[batch]] * self.node_vectors[sources[batch]])
        self._compress()

        self.edges = edges
        self.threshold = self._calibrate_threshold()
        logger.info(
            f"Encoded {'directed' if self.directed else 'undirected'} graph: "
            f"{len(self.node_index)} nodes, {len(edges)} edges, "
            f"{len(self.weight_classes)} weight class(es), threshold {self.threshold:.4f}"
        )
        if not self.retain_edges:
            self.edges = []
        return self

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------

    def _node(self, name: str) -> int:
        try:
            return self.node_index[name]
        except KeyError:
            raise UnknownNodeError(f"Unknown node: '{name}'")

    def _scores(self, u: int, v: int) -> np.ndarray:
        probe = self.graph_vector.astype(np.int32) * self.node_vectors[u]
        keys = self.weight_vectors.astype(np.int32) * self._target(v)
        return (keys @ probe) / float(self.dim)

    def edge_scores(self, u: str, v: str) -> Dict[Hashable, float]:
        """Retrieval score of edge ``u -> v`` for every weight class."""
        self._require_fitted()
        if u == v:
            raise SelfLoopError(f"Self-loops are not supported: {u} -> {v}")
        scores = self._scores(self._node(u), self._node(v))
        return dict(zip(self.weight_classes, scores.tolist()))

    def edge_exists(self, u: str, v: str) -> Tuple[bool, float]:
        scores = self.edge_scores(u, v)
        best = max(scores.values())
        return best >= self.threshold, best

    def predict(self, u: str, v: str) -> Hashable:
        """Most likely weight class of edge ``u -> v``; ties go to the earlier class."""
        scores = self.edge_scores(u, v)
        return self.weight_classes[int(np.argmax(list(scores.values())))]

    def weight_accuracy(self) -> float:
        """Share of retained training edges whose weight class is recovered."""
        if not self.edges:
            raise InvalidInputError("The model keeps no training edges")
        predicted = [self.predict(u, v) for u, v, _ in self.edges]
        return MetricsCalculator.accuracy([w for _, _, w in self.edges], predicted)

    # ------------------------------------------------------------------
    # threshold and error mitigation
    # ------------------------------------------------------------------

    def _edge_pairs(self) -> Set[Tuple[int, int]]:
        pairs = set()
        for u, v, _ in self.edges:
            pairs.add((self.node_index[u], self.node_index[v]))
            if not self.directed:
                pairs.add((self.node_index[v], self.node_index[u]))
        return pairs

    def _non_edges(self, count: int) -> List[Tuple[int, int]]:
        """Seeded sample of up to ``count`` ordered node pairs that are not edges."""
        present = self._edge_pairs()
        n_nodes = len(self.node_index)
        available = n_nodes * (n_nodes - 1) - len(present)
        count = min(count, available)
        if count <= 0:
            return []

        rng = np.random.default_rng(self._seeds()[2])
        if available <= 4 * count:
            pool = [(u, v) for u in range(n_nodes) for v in range(n_nodes)
                    if u != v and (u, v) not in present]
            picks = rng.choice(len(pool), size=count, replace=False)
            return [pool[i] for i in sorted(picks)]

        sample: List[Tuple[int, int]] = []
        seen: Set[Tuple[int, int]] = set()
        while len(sample) < count:
            u, v = (int(i) for i in rng.integers(n_nodes, size=2))
            if u == v or (u, v) in present or (u, v) in seen:
                continue
            seen.add((u, v))
            sample.append((u, v))
        return sample

    def _calibrate_threshold(self) -> float:
        edge_scores = [
            self._scores(self.node_index[u], self.node_index[v]).max() for u, v, _ in self.edges
        ]
        non_edges = self._non_edges(len(self.edges))
        if not non_edges:
            logger.debug("No non-edges to calibrate against; using 0 as the non-edge mean")
            non_edge_mean = 0.0
        else:
            non_edge_mean = float(np.mean([self._scores(u, v).max() for u, v in non_edges]))
        return (float(np.mean(edge_scores)) + non_edge_mean) / 2.0

    def _edge_term(self, u: int, v: int, w: int) -> np.ndarray:
        return (self.node_vectors[u] * self.weight_vectors[w] * self._target(v)).astype(ACCUMULATOR_DTYPE)

    def error_mitigation(self, max_rounds: int = 10) -> "GraphModel":
        """Corrective rounds on the graph accumulator; keeps the best round.

        Mispredicted edges add their true term and subtract the predicted
        one; sampled non-edges above the threshold have their best term
        subtracted. The threshold stays fixed.
        """
        self._require_fitted()
        if not self.edges:
            raise InvalidInputError("Error mitigation needs a model fitted with retain_edges=True")
        if max_rounds < 0:
            raise InvalidInputError("max_rounds must be >= 0")

        class_index = {w: i for i, w in enumerate(self.weight_classes)}
        indexed = [(self.node_index[u], self.node_index[v], class_index[w]) for u, v, w in self.edges]
        non_edges = self._non_edges(len(self.edges))

        best_accuracy = self.weight_accuracy()
        best_state = self.graph_accumulator.copy()
        initial_accuracy = best_accuracy

        for round_no in range(1, max_rounds + 1):
            delta = np.zeros(self.dim, dtype=ACCUMULATOR_DTYPE)
            corrections = 0
            for u, v, w in indexed:
                predicted = int(np.argmax(self._scores(u, v)))
                if predicted != w:
                    delta += self._edge_term(u, v, w) - self._edge_term(u, v, predicted)
                    corrections += 1
            for u, v in non_edges:
                scores = self._scores(u, v)
                if scores.max() >= self.threshold:
                    delta -= self._edge_term(u, v, int(np.argmax(scores)))
                    corrections += 1

            if corrections == 0:
                logger.debug(f"Mitigation round {round_no}: no corrections, stopping")
                break
            self.graph_accumulator = self.graph_accumulator + delta
            self.graph_vector = sign_with_ties(self.graph_accumulator, self.seed)

            accuracy = self.weight_accuracy()
            logger.debug(f"Mitigation round {round_no}: {corrections} correction(s), accuracy {accuracy:.4f}")
            if accuracy > best_accuracy:
                best_accuracy = accuracy
                best_state = self.graph_accumulator.copy()

        self.graph_accumulator = best_state
        self.graph_vector = sign_with_ties(best_state, self.seed)
        logger.info(f"Error mitigation: weight accuracy {initial_accuracy:.4f} -> {best_accuracy:.4f}")
        return self

    # ------------------------------------------------------------------
    # persistence
    # ------------------------------------------------------------------

    def to_payload(self):
        self._require_fitted()
        meta = {
            "config": self.config(),
            "nodes": self.nodes,
            "weight_classes": self.weight_classes,
            "threshold": self.threshold,
            "edges": [list(edge) for edge in self.edges],
        }
        arrays = {
            "node_vectors": self.node_vectors,
            "weight_vectors": self.weight_vectors,
            "memories": self.memories,
            "graph_accumulator": self.graph_accumulator,
        }
        return meta, arrays

    @classmethod
    def from_payload(cls, meta, arrays):
        model = cls(**meta["config"])
        model.node_index = {name: i for i, name in enumerate(meta["nodes"])}
        model.weight_classes = list(meta["weight_classes"])
        model.threshold = meta["threshold"]
        model.edges = [tuple(edge) for edge in meta["edges"]]
        model.node_vectors = arrays["node_vectors"]
        model.weight_vectors = arrays["weight_vectors"]
        model.memories = arrays["memories"]
        model.graph_accumulator = arrays["graph_accumulator"]
        model.graph_vector = sign_with_ties(model.graph_accumulator, model.seed)
        return model
