"""The resource space: four abstraction dimensions over one corpus.

Each dimension merges identical language representations into class nodes,
connects them with subclass edges (modifier rule plus harvested pattern
edges), breaks any cycles, transitively reduces the edge relation, and
attaches sentence postings.  After building, the space is immutable and
serves descendant-closed searches.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import subsume
from .corpus import TaggedSentence
from .subsume import (EQUAL, EdgeSet, MODIFIER, SUBCLASS, SYNTACTIC,
                      SynonymTable, compare_elements, scan_syntactic_patterns)
from .syntax import (Adverbial, Clause, NoFiniteVerb, Phrase, SentenceSyntax,
                     adverbial_key, canonical_key, display,
                     parse_sentence_parts)

DIMENSIONS = ("subject", "action", "object", "adverbial")

_EVIDENCE_RANK = {SYNTACTIC: 2, MODIFIER: 1}


class CycleDetected(ValueError):
    pass


@dataclass
class ClassNode:
    key: str
    display: str
    element: object  # Element for subject/action/object, Adverbial otherwise


@dataclass
class Dimension:
    name: str
    nodes: dict[str, ClassNode] = field(default_factory=dict)
    edges: set[tuple[str, str]] = field(default_factory=set)
    edge_meta: dict[tuple[str, str], tuple[str, int | None]] = field(default_factory=dict)
    postings: dict[str, set[int]] = field(default_factory=dict)
    dropped_edges: list[tuple[str, str, str]] = field(default_factory=list)

    def children_map(self) -> dict[str, set[str]]:
        out: dict[str, set[str]] = {}
        for child, parent in self.edges:
            out.setdefault(parent, set()).add(child)
        return out

    def descendants(self, keys: set[str]) -> set[str]:
        children = self.children_map()
        seen = set(keys)
        frontier = list(keys)
        while frontier:
            for child in children.get(frontier.pop(), ()):
                if child not in seen:
                    seen.add(child)
                    frontier.append(child)
        return seen

    def closure_pairs(self) -> set[tuple[str, str]]:
        """Transitive closure of the stored (reduced) edges."""
        parents: dict[str, set[str]] = {}
        for child, parent in self.edges:
            parents.setdefault(child, set()).add(parent)
        out: set[tuple[str, str]] = set()
        for start in parents:
            seen: set[str] = set()
            frontier = [start]
            while frontier:
                for nxt in parents.get(frontier.pop(), ()):
                    if nxt not in seen:
                        seen.add(nxt)
                        frontier.append(nxt)
            out.update((start, p) for p in seen)
        return out


@dataclass
class SentenceRecord:
    sentence_id: int
    doc_id: str
    text: str
    voice: str
    lemmas: list[str] = field(default_factory=list)


@dataclass
class ResourceSpace:
    dimensions: dict[str, Dimension]
    sentences: dict[int, list[SentenceSyntax]]  # id -> parsed parts
    records: dict[int, SentenceRecord]
    uncovered: list[int]  # sentence ids with no action (unparseable)
    edge_set: EdgeSet
    synonyms: SynonymTable

    def sentence_ids(self) -> list[int]:
        return sorted(self.records)


# ---------------------------------------------------------------------------
# Element extraction and comparison per dimension
# ---------------------------------------------------------------------------


def _element_key(name: str, element) -> str:
    if name == "adverbial":
        return adverbial_key(element)
    return canonical_key(element)


def _element_display(name: str, element) -> str:
    if name == "adverbial":
        return display(element.content)
    return display(element)


def _relation(name: str, e1, e2, edges: EdgeSet, syn: SynonymTable | None = None) -> str:
    if name == "adverbial":
        return subsume.adverbial_relation(e1, e2, edges, syn)
    return compare_elements(e1, e2, edges, syn)


def _bucket(name: str, element) -> tuple:
    """Only same-bucket nodes can be related by the modifier rules."""
    if name == "adverbial":
        return ("adv", element.kind) + _bucket("", element.content)
    if isinstance(element, Phrase):
        if element.kind == "prepositional":
            return ("pp", element.preposition(), element.head)
        return (element.kind, element.head)
    if isinstance(element, Clause):
        action_head = element.action.head if element.action else "-"
        return ("cl", element.lead or "-", action_head)
    return ("?",)


def sentence_elements(part: SentenceSyntax) -> dict[str, list]:
    """The four dimension elements carried by one parsed sentence part."""
    out: dict[str, list] = {name: [] for name in DIMENSIONS}
    if part.subject is not None:
        out["subject"].append(part.subject)
    if part.action is not None:
        out["action"].append(part.action)
    if part.object is not None:
        out["object"].append(part.object.direct)
    out["adverbial"].extend(part.adverbials)
    return out


# ---------------------------------------------------------------------------
# Dimension construction
# ---------------------------------------------------------------------------


def build_dimension(name: str, items: list[tuple[int, object]],
                    harvested: EdgeSet | None = None) -> Dimension:
    """Merge, connect, break cycles, reduce, attach postings."""
    harvested = harvested if harvested is not None else EdgeSet()
    dim = Dimension(name)

    # 1. canonicalize and merge duplicates
    for sid, element in items:
        key = _element_key(name, element)
        if key not in dim.nodes:
            dim.nodes[key] = ClassNode(key, _element_display(name, element),
                                       element)
        dim.postings.setdefault(key, set()).add(sid)

    raw_edges: list[tuple[str, str, str, int | None]] = []

    # 2a. inject harvested edges whose child belongs to this dimension
    # (exactly, or through a more specific node), materializing missing
    # endpoints; repeated so edge chains attach
    kind = {"subject": "np", "object": "np", "action": "vp"}.get(name)
    if kind is not None:
        pending = sorted(harvested.of_kind(kind),
                         key=lambda e: (e.child, e.parent))
        seen_entries: set[tuple] = set()
        changed = True
        while changed:
            changed = False
            for edge in pending:
                entry = (edge.child, edge.parent, edge.source, edge.evidence)
                if entry in seen_entries:
                    continue
                child_elem = harvested.elements[edge.child]
                attaches = edge.child in dim.nodes or any(
                    subsume.compare_elements(node.element, child_elem,
                                             harvested) == SUBCLASS
                    for node in dim.nodes.values()
                )
                if not attaches:
                    continue
                for endpoint in (edge.child, edge.parent):
                    if endpoint not in dim.nodes:
                        element = harvested.elements[endpoint]
                        dim.nodes[endpoint] = ClassNode(
                            endpoint, display(element), element)
                        dim.postings.setdefault(endpoint, set())
                raw_edges.append(entry)
                seen_entries.add(entry)
                changed = True

    # 2b. modifier-rule edges by pairwise comparison inside head buckets
    buckets: dict[tuple, list[str]] = {}
    for key in sorted(dim.nodes):
        buckets.setdefault(_bucket(name, dim.nodes[key].element), []).append(key)
    for bucket_keys in buckets.values():
        for child_key in bucket_keys:
            for parent_key in bucket_keys:
                if child_key == parent_key:
                    continue
                rel = _relation(name, dim.nodes[child_key].element,
                                dim.nodes[parent_key].element, harvested)
                if rel == SUBCLASS:
                    entry = (child_key, parent_key, MODIFIER, None)
                    if (child_key, parent_key) not in {(c, p) for c, p, _, _ in raw_edges}:
                        raw_edges.append(entry)

    # 3. break cycles: drop lowest-evidence, then latest-discovered
    kept = _break_cycles(raw_edges, dim.dropped_edges)

    # 4. transitive reduction
    pairs = {(c, p) for c, p, _, _ in kept}
    reduced = transitive_reduce(pairs)
    dim.edges = reduced
    dim.edge_meta = {(c, p): (src, ev) for c, p, src, ev in kept
                     if (c, p) in reduced}
    return dim


def _break_cycles(raw_edges, dropped_log) -> list:
    edges = list(raw_edges)
    while True:
        cycle = _find_cycle({(c, p) for c, p, _, _ in edges})
        if cycle is None:
            return edges
        # candidates on the cycle, weakest evidence first, then latest
        candidates = [
            (i, entry) for i, entry in enumerate(edges)
            if (entry[0], entry[1]) in cycle
        ]
        candidates.sort(key=lambda item: (_EVIDENCE_RANK[item[1][2]], -item[0]))
        idx, entry = candidates[0]
        edges.pop(idx)
        dropped_log.append((entry[0], entry[1], entry[2]))


def _find_cycle(pairs: set[tuple[str, str]]):
    """Return the edge set of one cycle, or None."""
    graph: dict[str, list[str]] = {}
    for child, parent in sorted(pairs):
        graph.setdefault(child, []).append(parent)
    WHITE, GREY, BLACK = 0, 1, 2
    color = {node: WHITE for node in
             set(graph) | {p for ps in graph.values() for p in ps}}
    stack_path: list[str] = []

    def visit(node):
        color[node] = GREY
        stack_path.append(node)
        for nxt in graph.get(node, ()):
            if color[nxt] == GREY:
                start = stack_path.index(nxt)
                cycle_nodes = stack_path[start:] + [nxt]
                return {(cycle_nodes[k], cycle_nodes[k + 1])
                        for k in range(len(cycle_nodes) - 1)}
            if color[nxt] == WHITE:
                found = visit(nxt)
                if found:
                    return found
        stack_path.pop()
        color[node] = BLACK
        return None

    for node in sorted(color):
        if color[node] == WHITE:
            found = visit(node)
            if found:
                return found
    return None


def transitive_reduce(pairs: set[tuple[str, str]]) -> set[tuple[str, str]]:
    """Unique minimal relation with the same transitive closure (DAG only)."""
    if _find_cycle(set(pairs)) is not None:
        raise CycleDetected("edge set contains a cycle")
    parents: dict[str, set[str]] = {}
    for child, parent in pairs:
        parents.setdefault(child, set()).add(parent)

    def reachable(start: str, target: str, skip: tuple[str, str]) -> bool:
        seen = set()
        frontier = [start]
        while frontier:
            node = frontier.pop()
            for nxt in parents.get(node, ()):
                if (node, nxt) == skip:
                    continue
                if nxt == target:
                    return True
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return False

    return {(c, p) for c, p in pairs if not reachable(c, p, (c, p))}


# ---------------------------------------------------------------------------
# Space construction
# ---------------------------------------------------------------------------


def build_space(tagged: list[TaggedSentence],
                synonyms: SynonymTable | None = None) -> ResourceSpace:
    """Parse every sentence, harvest pattern edges, and build all four
    dimensions.  Unparseable sentences are recorded, never fatal.

    Passive voice is normalized here, immediately before parsing; sentence
    records keep the raw surface and lemma order so that the ranking
    baselines compare against the text as written.
    """
    from .corpus import normalize_voice

    synonyms = synonyms or SynonymTable()
    parsed: dict[int, list[SentenceSyntax]] = {}
    records: dict[int, SentenceRecord] = {}
    uncovered: list[int] = []
    harvest_triples = []
    for raw_sentence in tagged:
        sentence = normalize_voice(raw_sentence)
        records[sentence.sentence_id] = SentenceRecord(
            sentence.sentence_id, sentence.doc_id,
            raw_sentence.surface_text(), sentence.voice,
            raw_sentence.lemmas())
        try:
            parts = parse_sentence_parts(sentence)
        except NoFiniteVerb:
            uncovered.append(sentence.sentence_id)
            continue
        parsed[sentence.sentence_id] = parts
        for part in parts:
            harvest_triples.extend(scan_syntactic_patterns(sentence, part))
    edge_set = subsume.harvest_edges(harvest_triples)

    items: dict[str, list[tuple[int, object]]] = {n: [] for n in DIMENSIONS}
    for sid in sorted(parsed):
        for part in parsed[sid]:
            for name, elements in sentence_elements(part).items():
                items[name].extend((sid, e) for e in elements)

    dimensions = {name: build_dimension(name, items[name], edge_set)
                  for name in DIMENSIONS}
    return ResourceSpace(dimensions, parsed, records, uncovered, edge_set,
                         synonyms)


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


def search(space: ResourceSpace, dimension: str, query,
           syn: SynonymTable | None = None) -> set[int]:
    """Sentences reachable from the query downwards.

    The query node is located by canonical key; when absent, every node
    that is a subclass of the query anchors the search.  Postings of the
    anchors and all their descendants are unioned.  `query=None` addresses
    the dimension root: every sentence carrying the element.
    """
    dim = space.dimensions[dimension]
    if query is None:
        out: set[int] = set()
        for postings in dim.postings.values():
            out.update(postings)
        return out
    anchors = {
        key for key, node in dim.nodes.items()
        if _relation(dimension, node.element, query, space.edge_set, syn)
        in (EQUAL, SUBCLASS)
    }
    if not anchors:
        return set()
    out = set()
    for key in dim.descendants(anchors):
        out.update(dim.postings.get(key, ()))
    return out


# ---------------------------------------------------------------------------
# Coverage
# ---------------------------------------------------------------------------


@dataclass
class CoverageReport:
    total: int
    covered: dict[str, int]
    ratios: dict[str, float | None]
    union_covered: int
    union_ratio: float | None
    intersection_covered: int  # subject & action & object
    intersection_ratio: float | None
    empty: bool

    def lines(self) -> list[str]:
        if self.empty:
            return ["coverage: undefined (empty corpus)"]
        out = []
        for name in DIMENSIONS:
            out.append(f"{name:<10} {self.covered[name]}/{self.total}"
                       f" = {self.ratios[name]:.2%}")
        out.append(f"{'union':<10} {self.union_covered}/{self.total}"
                   f" = {self.union_ratio:.2%}")
        out.append(f"{'s&a&o':<10} {self.intersection_covered}/{self.total}"
                   f" = {self.intersection_ratio:.2%}")
        return out


def coverage(space: ResourceSpace) -> CoverageReport:
    ids = set(space.records)
    total = len(ids)
    if total == 0:
        return CoverageReport(0, {n: 0 for n in DIMENSIONS},
                              {n: None for n in DIMENSIONS}, 0, None, 0, None,
                              empty=True)
    per_dim: dict[str, set[int]] = {}
    for name in DIMENSIONS:
        covered: set[int] = set()
        for postings in space.dimensions[name].postings.values():
            covered.update(postings)
        per_dim[name] = covered & ids
    union = set().union(*per_dim.values()) if per_dim else set()
    intersection = per_dim["subject"] & per_dim["action"] & per_dim["object"]
    return CoverageReport(
        total=total,
        covered={n: len(per_dim[n]) for n in DIMENSIONS},
        ratios={n: len(per_dim[n]) / total for n in DIMENSIONS},
        union_covered=len(union),
        union_ratio=len(union) / total,
        intersection_covered=len(intersection),
        intersection_ratio=len(intersection) / total,
        empty=False,
    )


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------

_NF_DIMENSIONS = ("subject", "action", "object")


@dataclass
class NFReport:
    first_nf: bool
    second_nf: bool
    third_nf: bool
    duplicate_keys: list[str]
    double_posted: list[tuple[str, int]]
    full_coverage: dict[str, bool]
    subspace_sentences: int  # sentences covered by subject & action & object

    def lines(self) -> list[str]:
        out = [f"1NF: {self.first_nf}",
               f"2NF (subject/action/object): {self.second_nf}",
               f"3NF (subject/action/object, all sentences): {self.third_nf}"]
        for name in _NF_DIMENSIONS:
            out.append(f"  full coverage {name}: {self.full_coverage[name]}")
        out.append(f"  3NF subspace size: {self.subspace_sentences} sentences")
        return out


def check_normal_forms(space: ResourceSpace) -> NFReport:
    """1NF: no duplicate coordinates; 2NF: sibling coordinates of one
    dimension are disjoint (one subject/action/object per sentence part);
    3NF: every sentence is covered by each checked dimension.  The subspace
    restricted to commonly-covered sentences always attains 3NF."""
    duplicates: list[str] = []
    for name in DIMENSIONS:
        seen: set[str] = set()
        for key in space.dimensions[name].nodes:
            if key in seen:
                duplicates.append(key)
            seen.add(key)
    first = not duplicates

    double_posted: list[tuple[str, int]] = []
    for name in _NF_DIMENSIONS:
        posted: dict[int, int] = {}
        for key in sorted(space.dimensions[name].postings):
            for sid in space.dimensions[name].postings[key]:
                posted[sid] = posted.get(sid, 0) + 1
        double_posted.extend((name, sid) for sid, count in sorted(posted.items())
                             if count > 1)
    second = first and not double_posted

    ids = set(space.records)
    per_dim = {}
    for name in _NF_DIMENSIONS:
        covered: set[int] = set()
        for postings in space.dimensions[name].postings.values():
            covered.update(postings)
        per_dim[name] = covered & ids
    full = {name: per_dim[name] == ids and bool(ids) for name in _NF_DIMENSIONS}
    subspace = per_dim["subject"] & per_dim["action"] & per_dim["object"]
    third = second and all(full.values())
    return NFReport(first, second, third, duplicates, double_posted, full,
                    len(subspace))


# ---------------------------------------------------------------------------
# Snapshots
# ---------------------------------------------------------------------------


def space_stats(space: ResourceSpace) -> list[str]:
    out = []
    for name in DIMENSIONS:
        dim = space.dimensions[name]
        out.append(f"{name} dimension: {len(dim.nodes)} nodes, "
                   f"{len(dim.edges)} subclass relations")
    return out


def serialize_space(space: ResourceSpace, corpus_text: str) -> str:
    """Deterministic diffable snapshot.  The tagged corpus section is
    embedded so a snapshot is self-contained for queries."""
    lines = ["#space v1", "[CORPUS]"]
    lines.extend(corpus_text.rstrip("\n").splitlines())
    lines.append("")
    for name in DIMENSIONS:
        dim = space.dimensions[name]
        lines.append(f"[DIMENSION {name}]")
        lines.append("[NODES]")
        for key in sorted(dim.nodes):
            lines.append(f"{key}\t{dim.nodes[key].display}")
        lines.append("[EDGES]")
        for child, parent in sorted(dim.edges):
            source, evidence = dim.edge_meta.get((child, parent), ("?", None))
            lines.append(f"{child}\t{parent}\t{source}\t"
                         f"{'' if evidence is None else evidence}")
        lines.append("[POSTINGS]")
        for key in sorted(dim.postings):
            ids = ",".join(str(s) for s in sorted(dim.postings[key]))
            lines.append(f"{key}\t{ids}")
        lines.append("[DROPPED]")
        for child, parent, source in dim.dropped_edges:
            lines.append(f"{child}\t{parent}\t{source}")
    lines.append("[UNCOVERED]")
    lines.append(",".join(str(s) for s in sorted(space.uncovered)))
    lines.append("")
    return "\n".join(lines)


def corpus_section(snapshot_text: str) -> str:
    """Extract the embedded tagged corpus from a space snapshot."""
    lines = snapshot_text.splitlines()
    try:
        start = lines.index("[CORPUS]") + 1
    except ValueError:
        raise ValueError("snapshot has no [CORPUS] section")
    out = []
    for line in lines[start:]:
        if line.startswith("[DIMENSION "):
            break
        out.append(line)
    return "\n".join(out)
