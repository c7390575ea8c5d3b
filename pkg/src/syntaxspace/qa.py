"""Question parsing, candidate retrieval, and answer selection.

Questions are classified by their leading word and inverted auxiliary into
subject / object (direct, indirect, complement) / adverbial / general
questions, then un-inverted into the declarative slot tuple.  Candidates
come from intersecting dimension searches; each candidate is checked
against the answer pattern for the question kind: every question slot must
reappear as the same element, a synonym (action heads only), or a
subclass, and the asked-for slot must be filled by the answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import lexicon as lx
from .corpus import TaggedSentence
from .space import ResourceSpace, search
from .subsume import (EQUAL, EdgeSet, SUBCLASS, SUPERCLASS, SynonymTable,
                      compare_elements)
from .syntax import (Adverbial, Element, NEGATIVE, ObjectGroup, Phrase,
                     SentenceSyntax, VERB, _Parser, _nominal_start,
                     _verb_group_start)

SUBJECT_Q = "subject"
DIRECT_OBJECT_Q = "direct_object"
INDIRECT_OBJECT_Q = "indirect_object"
OBJECT_COMPLEMENT_Q = "object_complement"
ADVERBIAL_Q = "adverbial"
GENERAL_Q = "general"

# which adverbial kinds answer which interrogative
_ADVERBIAL_GAPS = {
    "when": ("time",),
    "where": ("place",),
    "why": ("reason", "purpose"),
    "how": ("method",),
}

_AUX_LEMMAS = frozenset({"do", "be", "have"} | set(lx.MODAL_VERBS))


class NotAQuestion(ValueError):
    pass


@dataclass
class QuestionSyntax:
    kind: str
    interrogative: str
    subject: Element | None
    action: Phrase | None
    object: ObjectGroup | None
    adverbials: tuple[Adverbial, ...]
    polarity: str = "affirmative"
    gap: str = "none"  # subject | direct | indirect | complement | adverbial | none
    adverbial_kinds: tuple[str, ...] = ()
    raw: str = ""


@dataclass
class AnswerJudgment:
    sentence_id: int
    accepted: bool
    matched: dict[str, str] = field(default_factory=dict)
    consistency_penalty: int = 0
    strict_count: int = 0
    affirmed: bool | None = None

    @property
    def score(self) -> tuple:
        return (-len([o for o in self.matched.values()
                      if o in ("same", "synonym", "subclass", "gap_filled")]),
                self.strict_count, self.consistency_penalty, self.sentence_id)


# ---------------------------------------------------------------------------
# Question parsing
# ---------------------------------------------------------------------------


def parse_question(sentence: TaggedSentence) -> QuestionSyntax:
    """Parse a question against the question grammars.

    Raises NotAQuestion for inputs that neither end with "?" nor start
    with an interrogative, auxiliary or modal, or that do not fit any
    question pattern.
    """
    tokens = sentence.tokens
    end = len(tokens)
    has_qmark = False
    while end > 0 and tokens[end - 1].pos in (".", ",", ":"):
        if tokens[end - 1].surface == "?":
            has_qmark = True
        end -= 1
    parser = _Parser(tokens)
    leading, i = parser.parse_leading_adverbials(0, end)
    if i >= end:
        raise NotAQuestion("empty question")
    lemma = tokens[i].lemma
    is_wh = lemma in lx.WH_WORDS
    is_aux = lemma in _AUX_LEMMAS
    if not (has_qmark or is_wh or is_aux):
        raise NotAQuestion(f"not a question: {sentence.surface_text()!r}")
    if lemma in ("when", "where", "why", "how"):
        q = _parse_adverbial_question(parser, tokens, i, end, lemma)
    elif is_wh:
        q = _parse_wh_question(parser, tokens, i, end, lemma)
    elif is_aux:
        q = _parse_general_question(parser, tokens, i, end, lemma)
    else:
        raise NotAQuestion(f"cannot classify: {sentence.surface_text()!r}")
    q.adverbials = tuple(leading) + q.adverbials
    q.raw = sentence.surface_text()
    return q


def _skip_aux(tokens, i, end):
    """Consume the inverted auxiliary/modal and any negation."""
    negated = False
    if i < end and (tokens[i].lemma in _AUX_LEMMAS or tokens[i].pos == "MD"):
        i += 1
        while i < end and tokens[i].lemma in ("not", "never"):
            negated = True
            i += 1
        return i, negated, True
    return i, negated, False


def _parse_adverbial_question(parser, tokens, i, end, word):
    kinds = _ADVERBIAL_GAPS[word]
    i += 1
    subject = None
    # "how to build an extract?" form
    if i < end and tokens[i].pos == "TO":
        action, j = parser.parse_verb_group(i + 1, end)
        if action is None:
            raise NotAQuestion("bare infinitive question without a verb")
        group, j = parser.parse_object_group(j, end, action)
        advs, j = parser.parse_trailing_adverbials(j, end)
        return QuestionSyntax(ADVERBIAL_Q, word, None, _strip_aux(action),
                              group, tuple(advs), "affirmative", "adverbial",
                              kinds)
    i, negated, had_aux = _skip_aux(tokens, i, end)
    if not had_aux:
        raise NotAQuestion(f"'{word}' question without auxiliary")
    subject, i = parser.parse_subject_element(i, end)
    action, i = parser.parse_verb_group(i, end)
    if action is None:
        raise NotAQuestion("no verb group in question")
    group, i = parser.parse_object_group(i, end, action)
    advs, i = parser.parse_trailing_adverbials(i, end)
    polarity = NEGATIVE if negated or set(action.pre) & lx.NEGATION_WORDS \
        else "affirmative"
    return QuestionSyntax(ADVERBIAL_Q, word, subject, _strip_aux(action),
                          group, tuple(advs), polarity, "adverbial", kinds)


def _parse_wh_question(parser, tokens, i, end, word):
    i += 1
    type_np = None
    if i < end and _nominal_start(tokens, i) and not tokens[i].pos == "PRP":
        type_np, i = parser.parse_np(i, end)
    if i >= end:
        raise NotAQuestion("question ends after interrogative")
    nxt = tokens[i]
    # "what is X?": definition question asking for the (non-empty) object
    if type_np is None and nxt.lemma == "be":
        j = i + 1
        subject, j = parser.parse_subject_element(j, end)
        if subject is not None:
            advs, j = parser.parse_trailing_adverbials(j, end)
            if j >= end:
                action = Phrase(VERB, "be", (), (), (i, i + 1))
                return QuestionSyntax(DIRECT_OBJECT_Q, word, subject, action,
                                      None, tuple(advs), "affirmative",
                                      "direct")
    # inverted auxiliary -> object question
    if nxt.lemma in _AUX_LEMMAS and (
            type_np is not None
            or (i + 1 < end and (_nominal_start(tokens, i + 1)
                                 or tokens[i + 1].lemma in ("not", "never")))):
        return _parse_object_question(parser, tokens, i, end, word, type_np)
    # no inversion -> subject question
    if _verb_group_start(tokens, i):
        action, j = parser.parse_verb_group(i, end)
        if action is None:
            raise NotAQuestion("no verb group in question")
        group, j = parser.parse_object_group(j, end, action)
        advs, j = parser.parse_trailing_adverbials(j, end)
        polarity = NEGATIVE if set(action.pre) & lx.NEGATION_WORDS \
            else "affirmative"
        return QuestionSyntax(SUBJECT_Q, word, type_np, _strip_aux(action),
                              group, tuple(advs), polarity, "subject")
    raise NotAQuestion(f"unrecognized question shape after {word!r}")


def _parse_object_question(parser, tokens, i, end, word, type_np):
    i, negated, _ = _skip_aux(tokens, i, end)
    subject, i = parser.parse_subject_element(i, end)
    if subject is None:
        raise NotAQuestion("object question without a subject")
    action, i = parser.parse_verb_group(i, end)
    if action is None:
        raise NotAQuestion("no verb group in question")
    polarity = NEGATIVE if negated or set(action.pre) & lx.NEGATION_WORDS \
        else "affirmative"
    action = _strip_aux(action)

    present = None
    indirect_prep = None
    if i < end and tokens[i].lemma in lx.OBJECT_PREPOSITIONS \
            and tokens[i].pos in ("TO", "IN") and _nominal_start(tokens, i + 1):
        indirect_prep = tokens[i].lemma
        present, i = parser.parse_np(i + 1, end)
    elif i < end and _nominal_start(tokens, i):
        present, i = parser.parse_np(i, end)
    dangling = None
    if i < end and tokens[i].lemma in lx.OBJECT_PREPOSITIONS \
            and tokens[i].pos in ("TO", "IN") \
            and (i + 1 >= end or tokens[i + 1].pos in (".", ",")):
        dangling = tokens[i].lemma
        i += 1
    advs, i = parser.parse_trailing_adverbials(i, end)

    if dangling is not None:
        # "which node does the network send the weight to?"
        group = ObjectGroup(present, type_np, None, "after_preposition",
                            dangling) if present is not None else \
            ObjectGroup(type_np, None, None, "none", None)
        gap = "indirect" if present is not None else "direct"
        kind = INDIRECT_OBJECT_Q if present is not None else DIRECT_OBJECT_Q
    elif indirect_prep is not None:
        # "which weight does the network send to node?"
        group = ObjectGroup(type_np, present, None, "after_preposition",
                            indirect_prep)
        gap, kind = "direct", DIRECT_OBJECT_Q
    elif present is not None and action.head in lx.COMPLEMENT_VERBS:
        # "what do researchers call deep learning?"
        group = ObjectGroup(present, None, type_np, "none", None)
        gap, kind = "complement", OBJECT_COMPLEMENT_Q
    elif present is not None:
        # "what does the school award Mike?": the present nominal receives
        group = ObjectGroup(type_np, present, None, "before_direct", None)
        gap, kind = "direct", DIRECT_OBJECT_Q
    else:
        group = ObjectGroup(type_np, None, None, "none", None) \
            if type_np is not None else None
        gap, kind = "direct", DIRECT_OBJECT_Q
    return QuestionSyntax(kind, word, subject, action, group, tuple(advs),
                          polarity, gap)


def _parse_general_question(parser, tokens, i, end, word):
    i, negated, _ = _skip_aux(tokens, i, end)
    subject, i = parser.parse_subject_element(i, end)
    if subject is None:
        raise NotAQuestion("general question without a subject")
    action, i = parser.parse_verb_group(i, end)
    if action is None:
        raise NotAQuestion("no verb group in question")
    group, i = parser.parse_object_group(i, end, action)
    advs, i = parser.parse_trailing_adverbials(i, end)
    polarity = NEGATIVE if negated or set(action.pre) & lx.NEGATION_WORDS \
        else "affirmative"
    return QuestionSyntax(GENERAL_Q, word, subject, _strip_aux(action), group,
                          tuple(advs), polarity, "none")


def _strip_aux(action: Phrase) -> Phrase:
    """Drop auxiliary/modal pre-head items from a question action: they are
    functional and would block matching declarative actions.  Negation is
    kept for polarity-sensitive comparison."""
    keep = tuple(m for m in action.pre
                 if m in lx.NEGATION_WORDS
                 or m not in _AUX_LEMMAS and m not in lx.MODAL_VERBS)
    return Phrase(VERB, action.head, keep, action.post, action.span)


# ---------------------------------------------------------------------------
# Candidate retrieval
# ---------------------------------------------------------------------------


def candidate_search(space: ResourceSpace, q: QuestionSyntax) -> set[int]:
    """Intersect dimension searches over the question's non-gap slots.

    A gap slot with no type constraint contributes its dimension root when
    the answer grammar requires the element to be present (subject and
    object questions).
    """
    ids: set[int] | None = None

    def narrow(found: set[int]):
        nonlocal ids
        ids = found if ids is None else ids & found

    if q.subject is not None:
        narrow(search(space, "subject", q.subject))
    elif q.gap == "subject":
        narrow(search(space, "subject", None))
    if q.action is not None:
        narrow(search(space, "action", q.action, syn=space.synonyms))
    if q.object is not None and q.object.direct is not None:
        narrow(search(space, "object", q.object.direct))
    elif q.gap in ("direct", "indirect", "complement"):
        narrow(search(space, "object", None))
    for adverbial in q.adverbials:
        narrow(search(space, "adverbial", adverbial))
    if ids is None:
        ids = set(space.sentences)
    return ids


# ---------------------------------------------------------------------------
# Answer matching
# ---------------------------------------------------------------------------


def match_answer(q: QuestionSyntax, s: SentenceSyntax,
                 edges: EdgeSet | None = None,
                 syn: SynonymTable | None = None) -> AnswerJudgment:
    """Check one candidate sentence against the answer pattern for q.

    Every question slot must be matched by the same element, a synonym
    (action heads only) or a subclass; the asked slot must be present, and
    when the question constrains its type the answer must be strictly more
    specific.  Polarity disagreement is a ranking penalty, not a filter.
    """
    matched: dict[str, str] = {}
    ok = True

    def slot(name: str, answer_elem, question_elem, gap: bool):
        nonlocal ok
        if question_elem is None and not gap:
            return
        if gap:
            if answer_elem is None:
                matched[name] = "missing"
                ok = False
                return
            if question_elem is not None:
                rel = compare_elements(answer_elem, question_elem, edges, syn)
                if rel != SUBCLASS:
                    matched[name] = "mismatch"
                    ok = False
                    return
            matched[name] = "gap_filled"
            return
        if answer_elem is None:
            matched[name] = "missing"
            ok = False
            return
        rel = compare_elements(answer_elem, question_elem, edges, syn)
        if rel == EQUAL:
            matched[name] = _same_or_synonym(answer_elem, question_elem, syn)
        elif rel == SUBCLASS:
            matched[name] = "subclass"
        else:
            matched[name] = "mismatch"
            ok = False

    slot("subject", s.subject, q.subject, gap=q.gap == "subject")
    slot("action", s.action, q.action, gap=False)

    q_group = q.object or ObjectGroup(None)  # type: ignore[arg-type]
    s_group = s.object
    slot("object.direct", s_group.direct if s_group else None,
         q_group.direct if q.object else None, gap=q.gap == "direct")
    slot("object.indirect", s_group.indirect if s_group else None,
         q_group.indirect if q.object else None, gap=q.gap == "indirect")
    slot("object.complement", s_group.complement if s_group else None,
         q_group.complement if q.object else None, gap=q.gap == "complement")

    remaining = list(s.adverbials)
    for idx, q_adv in enumerate(q.adverbials):
        hit = None
        for pos, cand in enumerate(remaining):
            if cand.kind != q_adv.kind:
                continue
            rel = compare_elements(cand.content, q_adv.content, edges, syn)
            if rel in (EQUAL, SUBCLASS):
                hit = (pos, "same" if rel == EQUAL else "subclass")
                if rel == EQUAL:
                    break
        if hit is None:
            matched[f"adverbial[{idx}]"] = "missing"
            ok = False
        else:
            remaining.pop(hit[0])
            matched[f"adverbial[{idx}]"] = hit[1]
    if q.gap == "adverbial":
        filler = next((a for a in remaining if a.kind in q.adverbial_kinds),
                      None)
        if filler is None:
            matched["adverbial*"] = "missing"
            ok = False
        else:
            matched["adverbial*"] = "gap_filled"

    penalty = 0 if s.polarity == q.polarity else 1
    strict = sum(1 for outcome in matched.values() if outcome == "subclass")
    affirmed = None
    if q.kind == GENERAL_Q:
        affirmed = ok and penalty == 0
    return AnswerJudgment(s.sentence_id, ok, matched, penalty, strict,
                          affirmed)


def _same_or_synonym(answer_elem, question_elem, syn) -> str:
    if syn is not None and isinstance(answer_elem, Phrase) \
            and isinstance(question_elem, Phrase) \
            and answer_elem.kind == VERB \
            and answer_elem.head != question_elem.head \
            and syn.related(answer_elem.head, question_elem.head):
        return "synonym"
    return "same"


# ---------------------------------------------------------------------------
# End-to-end answering
# ---------------------------------------------------------------------------


def answer(space: ResourceSpace, question: TaggedSentence | QuestionSyntax,
           k: int = 5) -> list[tuple[int, AnswerJudgment]]:
    """parse -> candidate search -> pattern match -> rank -> truncate."""
    if isinstance(question, QuestionSyntax):
        q = question
    else:
        q = parse_question(question)
    judgments: list[AnswerJudgment] = []
    for sid in sorted(candidate_search(space, q)):
        best = None
        for part in space.sentences.get(sid, ()):
            judgment = match_answer(q, part, space.edge_set, space.synonyms)
            if judgment.accepted and (best is None
                                      or judgment.score < best.score):
                best = judgment
        if best is not None:
            judgments.append(best)
    judgments.sort(key=lambda j: j.score)
    return [(j.sentence_id, j) for j in judgments[:k]]


# ---------------------------------------------------------------------------
# Relevance (between questions, between sentences)
# ---------------------------------------------------------------------------


def _slot_pairs(a, b):
    yield a.subject, b.subject
    yield a.action, b.action
    ga, gb = a.object, b.object
    yield (ga.direct if ga else None), (gb.direct if gb else None)
    yield (ga.indirect if ga else None), (gb.indirect if gb else None)
    yield (ga.complement if ga else None), (gb.complement if gb else None)


def _any_pair_related(a, b, edges, syn) -> bool:
    for e1, e2 in _slot_pairs(a, b):
        if e1 is None or e2 is None:
            continue
        if compare_elements(e1, e2, edges, syn) in (EQUAL, SUBCLASS, SUPERCLASS):
            return True
    by_kind: dict[str, list] = {}
    for adv in b.adverbials:
        by_kind.setdefault(adv.kind, []).append(adv)
    for adv in a.adverbials:
        for cand in by_kind.get(adv.kind, ()):
            rel = compare_elements(adv.content, cand.content, edges, syn)
            if rel in (EQUAL, SUBCLASS, SUPERCLASS):
                return True
    return False


def question_relevant(q1: QuestionSyntax, q2: QuestionSyntax,
                      edges: EdgeSet | None = None,
                      syn: SynonymTable | None = None) -> bool:
    """Some aligned slot pair is the same / a subclass / a superclass."""
    return _any_pair_related(q1, q2, edges, syn)


def sentence_relevant(s1: SentenceSyntax, s2: SentenceSyntax,
                      edges: EdgeSet | None = None,
                      syn: SynonymTable | None = None) -> bool:
    return _any_pair_related(s1, s2, edges, syn)
