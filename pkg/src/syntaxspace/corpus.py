"""Text ingestion: sentence splitting, tagging, and voice normalization.

The built-in tagger is a rule/lexicon tagger: closed-class words come from
the bundled word lists, open-class words are resolved through a small
lexicon with inflection analysis, and unknown words fall back to suffix
heuristics.  All downstream golden tests can bypass it entirely through the
pre-tagged TSV format (`load_pretagged`).

Passive clauses with an explicit "by" agent are rewritten to active voice;
agentless passives are only flagged.  Downstream modules therefore see
active-voice token streams.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from . import lexicon as lx

# Tag inventory for pre-tagged input validation (Penn-style).
TAGSET = frozenset(
    [
        "NN", "NNS", "NNP", "NNPS", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ",
        "JJ", "JJR", "JJS", "RB", "RBR", "RBS", "IN", "TO", "DT", "PDT",
        "PRP", "PRP$", "MD", "CC", "CD", "WDT", "WP", "WP$", "WRB", "EX",
        "POS", "RP", "UH", "FW", "SYM", ".", ",", ":", "(", ")", "``", "''",
    ]
)

VERB_TAGS = frozenset(["VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "MD"])
FINITE_VERB_TAGS = frozenset(["VBD", "VBP", "VBZ", "MD"])
NOUN_TAGS = frozenset(["NN", "NNS", "NNP", "NNPS"])

ACTIVE = "active"
PASSIVE_CONVERTED = "passive_converted"
PASSIVE_AGENTLESS = "passive_agentless"


class MalformedLine(ValueError):
    """Raised by `load_pretagged` on a bad TSV line."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos: str
    index: int


@dataclass
class TaggedSentence:
    sentence_id: int
    doc_id: str
    tokens: list[Token]
    voice: str = ACTIVE
    raw: str = ""

    def surface_text(self) -> str:
        return self.raw if self.raw else " ".join(t.surface for t in self.tokens)

    def lemmas(self) -> list[str]:
        return [t.lemma for t in self.tokens]


# ---------------------------------------------------------------------------
# Sentence splitting
# ---------------------------------------------------------------------------

# Abbreviations that do not end a sentence even when followed by a capital.
_ABBREVIATIONS = frozenset(
    ["e.g", "i.e", "fig", "figs", "et al", "al", "etc", "cf", "vs", "dr",
     "mr", "mrs", "ms", "prof", "no", "eq", "sec", "ref", "refs", "approx"]
)

_BOUNDARY = re.compile(r"([.!?])(\s+)(?=[\"'(\[]?[A-Z0-9])")


def split_sentences(raw: str) -> list[str]:
    """Split raw text into sentence strings.

    Boundaries are {. ! ?} followed by whitespace and a capital or digit,
    except after a known abbreviation or a single-initial ("J. Smith").
    """
    if not raw or not raw.strip():
        return []
    text = re.sub(r"\s+", " ", raw.strip())
    sentences = []
    start = 0
    for match in _BOUNDARY.finditer(text):
        end = match.end(1)
        if match.group(1) == "." and _inside_abbreviation(text, match.start(1)):
            continue
        piece = text[start:end].strip()
        if piece:
            sentences.append(piece)
        start = match.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def _inside_abbreviation(text: str, dot: int) -> bool:
    before = text[:dot]
    word = re.search(r"[A-Za-z.]+$", before)
    if not word:
        return False
    token = word.group(0).lower().rstrip(".")
    if token in _ABBREVIATIONS:
        return True
    if f"{token}".replace(".", "") in ("eg", "ie"):
        return True
    # Single capital initial, e.g. "J." in "J. Smith".
    if len(token) == 1 and word.group(0)[0].isupper():
        return True
    # "et al." — lone "al" already covered; also catch "et al" kept together.
    return before.lower().endswith("et al")


# ---------------------------------------------------------------------------
# Tokenization
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    [A-Za-z][A-Za-z0-9'-]*      # words, hyphenated words, contractions
    | \d+(?:\.\d+)?             # numbers
    | [.,;:?!()\[\]"“”]         # punctuation kept as single tokens
    """,
    re.VERBOSE,
)


def tokenize(sentence: str) -> list[str]:
    return _TOKEN_RE.findall(sentence)


# ---------------------------------------------------------------------------
# Tagging
# ---------------------------------------------------------------------------


@dataclass
class TagLexicon:
    """Lookup tables for the rule tagger; immutable after construction."""

    verbs: frozenset = lx.VERBS
    nouns: frozenset = lx.NOUNS
    adjectives: frozenset = lx.ADJECTIVES
    adverbs: frozenset = lx.ADVERBS
    extra: dict = field(default_factory=dict)  # surface -> (lemma, pos)

    def lookup(self, word: str):
        return self.extra.get(word)


DEFAULT_LEXICON = TagLexicon()

_PUNCT_TAGS = {
    ".": ".", "?": ".", "!": ".", ",": ",", ";": ":", ":": ":",
    "(": "(", ")": ")", "[": "(", "]": ")", '"': "''", "“": "``", "”": "''",
}


def tag(sentence: str, sentence_id: int = 0, doc_id: str = "",
        lexicon: TagLexicon = DEFAULT_LEXICON) -> TaggedSentence:
    """Tag one raw sentence.  Never fails; unknown words get heuristic tags."""
    words = tokenize(sentence)
    tokens: list[Token] = []
    for i, word in enumerate(words):
        lemma, pos = _tag_word(word, i, words, lexicon)
        tokens.append(Token(word, lemma, pos, i))
    tokens = _contextual_fixups(tokens)
    return TaggedSentence(sentence_id, doc_id, tokens, ACTIVE, sentence)


def _tag_word(word: str, i: int, words: list[str], lexicon: TagLexicon):
    if word in _PUNCT_TAGS:
        return word, _PUNCT_TAGS[word]
    lower = word.lower()
    custom = lexicon.lookup(lower) or lexicon.lookup(word)
    if custom:
        return custom

    # Closed classes first; these lists come straight from the grammars.
    if lower in lx.MODAL_VERBS:
        return lower, "MD"
    if lower in lx.BE_FORMS or lower in lx.HAVE_FORMS or lower in lx.DO_FORMS:
        return lx.IRREGULAR_VERB_LEMMAS.get(lower, lower), _aux_tag(lower)
    if lower == "to":
        return "to", "TO"
    if lower == "not" or lower == "never":
        return lower, "RB"
    if lower in ("who", "whom", "whoever", "what", "whatever"):
        return lower, "WP"
    if lower == "whose":
        return lower, "WP$"
    if lower in ("which", "whichever"):
        return lower, "WDT"
    if lower in ("when", "where", "why", "how", "whenever", "wherever", "however"):
        return lower, "WRB"
    if lower == "that":
        return lower, "IN"  # complementizer reading; NP rule handles the rest
    if lower in ("such", "other", "own"):
        return lower, "JJ"
    if lower in lx.DETERMINERS and lower not in ("many", "most", "several", "few", "one", "more", "such", "all", "both"):
        return lower, "DT"
    if lower in lx.PRONOUNS:
        return lower, "PRP"
    if lower in lx.COORDINATING_CONJUNCTIONS:
        return lower, "CC"
    if lower in ("if", "because", "unless", "whether", "since", "while", "although", "though"):
        return lower, "IN"
    if lower in lx.PREPOSITIONS:
        return lower, "IN"
    if word.replace(".", "").isdigit():
        return lower, "CD"

    # Open classes through the lexicon with inflection analysis.
    reading = _open_class_reading(lower, lexicon)
    if reading:
        return reading

    # Suffix heuristics for unknown words.
    if word[0].isupper() and i > 0:
        return lower, "NNP"
    if lower.endswith("ing"):
        return _strip_with(lower, lx.verb_lemma_candidates, lexicon.verbs), "VBG"
    if lower.endswith("ed"):
        return _strip_with(lower, lx.verb_lemma_candidates, lexicon.verbs), "VBN"
    if lower.endswith("ly"):
        return lower, "RB"
    if lower.endswith(("tion", "ment", "ness", "ity", "ism", "ance", "ence")):
        return lower, "NN"
    if lower.endswith(("ous", "ive", "able", "ible", "ful", "ic", "al", "ar")) or "-" in lower:
        return lower, "JJ"
    if word[0].isupper():
        return lower, "NNP"
    if lower.endswith("s") and lower not in lx.S_FINAL_SINGULARS:
        return lx.noun_lemma_candidates(lower)[0], "NNS"
    return lower, "NN"


def _aux_tag(lower: str) -> str:
    return {
        "am": "VBP", "is": "VBZ", "are": "VBP", "was": "VBD", "were": "VBD",
        "be": "VB", "been": "VBN", "being": "VBG",
        "have": "VBP", "has": "VBZ", "had": "VBD",
        "do": "VBP", "does": "VBZ", "did": "VBD", "done": "VBN",
        "doing": "VBG", "having": "VBG",
    }[lower]


def _open_class_reading(lower: str, lexicon: TagLexicon):
    """Best reading from the open-class lexicon, or None."""
    if lower in lexicon.adverbs:
        return lower, "RB"
    if lower in lexicon.adjectives:
        return lower, "JJ"
    if lower in lexicon.nouns and lower in lexicon.verbs:
        return lower, "NN"  # noun/verb ambiguity resolved contextually later
    if lower in lexicon.nouns:
        return lower, "NN"
    if lower in lexicon.verbs:
        return lower, "VB"
    for cand in lx.noun_lemma_candidates(lower):
        if cand != lower and cand in lexicon.nouns:
            return cand, "NNS"
    for cand in lx.verb_lemma_candidates(lower):
        if cand == lower:
            continue
        if cand in lexicon.verbs:
            return cand, _verb_inflection_tag(lower, cand)
    return None


def _verb_inflection_tag(surface: str, base: str) -> str:
    if surface.endswith("ing"):
        return "VBG"
    if surface == lx.third_singular(base):
        return "VBZ"
    past, part = lx.past_tense(base), lx.past_participle(base)
    if surface == part:
        return "VBN"
    if surface == past:
        return "VBD"
    if surface.endswith("ed"):
        return "VBN"  # spelling-variant participles ("labelled")
    if surface.endswith("s"):
        return "VBZ"
    return "VB"


def _strip_with(word, candidates, vocab):
    for cand in candidates(word):
        if cand in vocab:
            return cand
    return word


def _contextual_fixups(tokens: list[Token]) -> list[Token]:
    """Resolve noun/verb ambiguity and finite-verb agreement from context."""
    out = list(tokens)
    for i, tok in enumerate(out):
        prev = out[i - 1] if i > 0 else None
        # Noun/verb ambiguous lemma: a determiner, adjective or preposition
        # before it forces the noun reading; a subject nominal before it and
        # an -s form forces VBZ.
        if tok.pos in ("NN", "NNS") and tok.lemma in lx.VERBS:
            if prev is None or prev.pos in ("DT", "JJ", "IN", "PRP$", "CD", "POS"):
                continue
            if prev.pos == "TO":
                out[i] = replace(tok, pos="VB")
            elif prev.pos == "MD" or (prev.pos in ("VBP", "VBZ", "VBD") and prev.lemma in ("do", "be", "have")):
                out[i] = replace(tok, pos="VB")
            elif prev.pos in NOUN_TAGS and tok.surface.lower().endswith("s") and tok.surface.lower() != tok.lemma:
                out[i] = replace(tok, pos="VBZ")
            elif prev.pos in ("NNS", "NNPS", "NNP") and tok.surface.lower() == tok.lemma:
                # plural/proper noun + base form agrees as a finite verb; a
                # singular common noun before keeps the compound reading
                out[i] = replace(tok, pos="VBP")
        # Base verbs in the lexicon: -s surface means VBZ after a nominal; a
        # determiner or true preposition before forces the noun reading
        # (subordinators like "that" do precede verbs).
        if tok.pos == "VB":
            surf = tok.surface.lower()
            noun_trigger = prev is not None and (
                prev.pos in ("DT", "JJ", "PRP$", "POS")
                or (prev.pos == "IN" and prev.lemma in lx.PREPOSITIONS
                    and prev.lemma not in ("that", "whether")))
            if noun_trigger:
                out[i] = replace(tok, pos="NNS" if surf != tok.lemma else "NN")
            elif surf != tok.lemma:
                out[i] = replace(tok, pos=_verb_inflection_tag(surf, tok.lemma))
            elif prev is not None and prev.pos in ("NNS", "NNPS", "NNP") or (prev is not None and prev.pos == "PRP" and prev.lemma in ("i", "you", "we", "they")):
                out[i] = replace(tok, pos="VBP")
        # "to" before a base verb is infinitival TO, before a nominal it is IN.
        if tok.pos == "TO":
            nxt = out[i + 1] if i + 1 < len(out) else None
            if nxt is not None and nxt.pos not in VERB_TAGS and nxt.pos != "RB":
                out[i] = replace(tok, pos="IN")
    return out


# ---------------------------------------------------------------------------
# Pre-tagged TSV
# ---------------------------------------------------------------------------


def load_pretagged(path) -> list[TaggedSentence]:
    """Load sentences from TSV: `surface<TAB>lemma<TAB>pos`, blank-line
    separated; `#doc <id>` lines set the document id.  Bypasses the tagger.
    """
    with open(path, encoding="utf-8") as handle:
        return parse_pretagged(handle.read())


def parse_pretagged(text: str) -> list[TaggedSentence]:
    sentences: list[TaggedSentence] = []
    doc_id = ""
    voice = ACTIVE
    current: list[Token] = []
    next_id = 1

    def flush():
        nonlocal current, next_id, voice
        if current:
            sentences.append(TaggedSentence(next_id, doc_id, current, voice))
            next_id += 1
        current = []
        voice = ACTIVE

    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            flush()
            continue
        if stripped.startswith("#doc"):
            flush()
            doc_id = stripped[4:].strip()
            continue
        if stripped.startswith("#voice"):
            voice = stripped[6:].strip() or ACTIVE
            continue
        if stripped.startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 3:
            raise MalformedLine(lineno, f"expected 3 columns, got {len(parts)}")
        surface, lemma, pos = parts
        if pos not in TAGSET:
            raise MalformedLine(lineno, f"unknown tag {pos!r}")
        if not lemma or any(ch.isspace() for ch in lemma):
            raise MalformedLine(lineno, f"bad lemma {lemma!r}")
        current.append(Token(surface, lemma, pos, len(current)))
    flush()
    return sentences


def serialize_pretagged(sentences: list[TaggedSentence]) -> str:
    lines = []
    last_doc = None
    for sent in sentences:
        if sent.doc_id != last_doc:
            lines.append(f"#doc {sent.doc_id}")
            last_doc = sent.doc_id
        if sent.voice != ACTIVE:
            lines.append(f"#voice {sent.voice}")
        for tok in sent.tokens:
            lines.append(f"{tok.surface}\t{tok.lemma}\t{tok.pos}")
        lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Voice normalization
# ---------------------------------------------------------------------------

_NP_TAGS = frozenset(["DT", "JJ", "JJR", "JJS", "NN", "NNS", "NNP", "NNPS",
                      "CD", "PRP", "VBG", "VBN", "POS", "PRP$"])


def normalize_voice(sentence: TaggedSentence) -> TaggedSentence:
    """Rewrite `NP1 be-aux VBN by NP2` windows as `NP2 verb NP1`.

    The verb is re-inflected to agree with NP2 (modals and perfect "have"
    are kept).  A passive window without a "by" agent leaves the sentence
    unchanged but flags it.  Idempotent: converted output contains no
    remaining convertible window.
    """
    tokens = sentence.tokens
    converted = False
    agentless = False
    guard = 0
    while guard < 10:
        guard += 1
        window = _find_passive_window(tokens)
        if window is None:
            break
        if window["agent_start"] is None:
            agentless = True
            break
        tokens = _rewrite_window(tokens, window)
        converted = True
    if converted:
        voice = PASSIVE_CONVERTED
    elif agentless:
        voice = PASSIVE_AGENTLESS
    else:
        voice = sentence.voice if sentence.voice != ACTIVE else ACTIVE
    return TaggedSentence(sentence.sentence_id, sentence.doc_id, tokens, voice,
                          sentence.raw)


def _find_passive_window(tokens: list[Token]):
    for i, tok in enumerate(tokens):
        if tok.lemma != "be" or tok.pos not in ("VBZ", "VBP", "VBD", "VB", "VBN"):
            continue
        # Optional adverbs between the auxiliary and the participle.
        j = i + 1
        while j < len(tokens) and tokens[j].pos == "RB":
            j += 1
        if j >= len(tokens) or tokens[j].pos != "VBN":
            continue
        participle = j
        # NP1 directly before the auxiliary chain (chain may include modals
        # and have-forms before the be-form).
        chain_start = i
        k = i - 1
        while k >= 0 and (tokens[k].pos in ("MD", "RB") or tokens[k].lemma in ("have", "be")):
            chain_start = k
            k -= 1
        np_end = chain_start  # exclusive
        np_start = np_end
        while np_start - 1 >= 0 and tokens[np_start - 1].pos in _NP_TAGS:
            np_start -= 1
        if np_start == np_end:
            continue
        if not any(tokens[t].pos in NOUN_TAGS or tokens[t].pos == "PRP"
                   for t in range(np_start, np_end)):
            continue
        # Post-participle adverbs, then the "by" agent.
        m = participle + 1
        while m < len(tokens) and tokens[m].pos == "RB":
            m += 1
        post_adv_end = m
        if m < len(tokens) and tokens[m].lemma == "by" and tokens[m].pos == "IN":
            agent_start = m + 1
            agent_end = agent_start
            while agent_end < len(tokens) and (
                tokens[agent_end].pos in _NP_TAGS
                or tokens[agent_end].lemma in ("of", "in", "that")
                and tokens[agent_end].pos in ("IN", "DT")
            ):
                agent_end += 1
            while agent_end > agent_start and tokens[agent_end - 1].lemma in ("of", "in", "that"):
                agent_end -= 1
            if agent_end > agent_start and any(
                tokens[t].pos in NOUN_TAGS or tokens[t].pos == "PRP"
                for t in range(agent_start, agent_end)
            ):
                return {
                    "np_start": np_start, "np_end": np_end,
                    "chain_start": chain_start, "be_index": i,
                    "participle": participle, "post_adv_end": post_adv_end,
                    "agent_start": agent_start, "agent_end": agent_end,
                }
        return {
            "np_start": np_start, "np_end": np_end, "chain_start": chain_start,
            "be_index": i, "participle": participle,
            "post_adv_end": post_adv_end, "agent_start": None,
            "agent_end": None,
        }
    return None


def _rewrite_window(tokens: list[Token], w) -> list[Token]:
    np1 = tokens[w["np_start"]:w["np_end"]]
    agent = tokens[w["agent_start"]:w["agent_end"]]
    # Auxiliaries kept in front of the verb: modals, have-forms, negation.
    kept = [t for t in tokens[w["chain_start"]:w["be_index"]]
            if t.pos in ("MD", "RB") or t.lemma == "have"]
    participle = tokens[w["participle"]]
    pre_adv = tokens[w["be_index"] + 1:w["participle"]]
    post_adv = tokens[w["participle"] + 1:w["post_adv_end"]]

    be_tok = tokens[w["be_index"]]
    # Tense/agreement: modal or have keeps the stored form; otherwise the
    # new finite verb agrees with the agent head.
    verb = _reinflect(participle, kept, be_tok, agent)

    rebuilt = (
        tokens[:w["np_start"]]
        + agent
        + kept
        + pre_adv
        + [verb]
        + np1
        + post_adv
        + tokens[w["agent_end"]:]
    )
    return [replace(t, index=i) for i, t in enumerate(rebuilt)]


def _reinflect(participle: Token, kept: list[Token], be_tok: Token,
               agent: list[Token]) -> Token:
    base = participle.lemma
    if any(t.lemma == "have" for t in kept):
        return replace(participle)  # perfect: "has been built" -> "has built"
    if any(t.pos == "MD" for t in kept):
        return Token(base, base, "VB", participle.index)
    head = next((t for t in reversed(agent) if t.pos in NOUN_TAGS), None)
    plural = head is not None and head.pos in ("NNS", "NNPS")
    if be_tok.pos == "VBD":  # was/were
        return Token(lx.past_tense(base), base, "VBD", participle.index)
    if plural:
        return Token(base, base, "VBP", participle.index)
    return Token(lx.third_singular(base), base, "VBZ", participle.index)


# ---------------------------------------------------------------------------
# Document ingestion
# ---------------------------------------------------------------------------


def ingest_text(raw: str, doc_id: str = "", lexicon: TagLexicon = DEFAULT_LEXICON,
                first_id: int = 1) -> list[TaggedSentence]:
    """Split and tag one document.

    The tagging is kept in source order; voice normalization runs when the
    space is built, so ranking baselines can still see the text as written.
    """
    return [tag(sentence, first_id + offset, doc_id, lexicon)
            for offset, sentence in enumerate(split_sentences(raw))]
