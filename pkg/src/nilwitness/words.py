"""Words and word expressions in the free group on a, b.

Two layers:

* GroupWord - a freely reduced word, stored as a tuple of signed letters
  (+1 = a, -1 = a^-1, +2 = b, -2 = b^-1).  The canonical form of a word.

* WordExpr - a structured expression (letters, powers, commutators,
  products) that evaluates to a group element.  Expressions are what the
  text syntax parses to; keeping the commutator structure around lets
  evaluators work at the element level instead of expanding commutators
  into very long letter strings.

Text syntax: letters a, A (= a^-1), b, B (= b^-1); commutators "[u,v]",
left-normalized chains "[u,v,w,...]", iterated form "[u,_n v]"; powers
"w^n" with integer n.  Whitespace is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass

_LETTER = {1: "a", -1: "A", 2: "b", -2: "B"}
_SIGNED = {"a": 1, "A": -1, "b": 2, "B": -2}


@dataclass(frozen=True)
class GroupWord:
    """Freely reduced word over {a, a^-1, b, b^-1}."""

    letters: tuple[int, ...]

    @staticmethod
    def identity() -> "GroupWord":
        return GroupWord(())

    @staticmethod
    def from_letters(seq) -> "GroupWord":
        out: list[int] = []
        for s in seq:
            if out and out[-1] == -s:
                out.pop()
            else:
                out.append(s)
        return GroupWord(tuple(out))

    @staticmethod
    def parse(text: str) -> "GroupWord":
        return GroupWord.from_letters(_SIGNED[ch] for ch in text if not ch.isspace())

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord.from_letters(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple(-s for s in reversed(self.letters)))

    def __pow__(self, n: int) -> "GroupWord":
        if n < 0:
            return self.inverse() ** (-n)
        return GroupWord.from_letters(self.letters * n)

    def commutator(self, other: "GroupWord") -> "GroupWord":
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return "".join(_LETTER[s] for s in self.letters)

    def __len__(self) -> int:
        return len(self.letters)


# --- structured expressions


class WordExpr:
    """Immutable expression tree; leaves are generators."""

    __slots__ = ("_text",)

    def key(self) -> str:
        return self._text  # canonical text, used as cache key

    def __str__(self) -> str:
        return self._text

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._text!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, WordExpr) and self._text == other._text

    def __hash__(self):
        return hash(self._text)

    def to_group_word(self) -> GroupWord:
        """Expand to a reduced letter word.

        Subexpression letter strings are cached for the duration of the call
        and assembled by flat concatenation, so the cost is linear in the
        expanded length even for large powers of long commutator words.
        """
        return GroupWord.from_letters(_letters_of(self, {}))

    def inverse(self) -> "WordExpr":
        return power(self, -1)


def _letters_of(expr: "WordExpr", cache: dict) -> tuple[int, ...]:
    key = expr.key()
    hit = cache.get(key)
    if hit is not None:
        return hit
    if isinstance(expr, Gen):
        out = (_SIGNED[expr.name],)
    elif isinstance(expr, Pow):
        base = _letters_of(expr.base, cache)
        if expr.exp < 0:
            base = tuple(-s for s in reversed(base))
        out = base * abs(expr.exp)
    elif isinstance(expr, Comm):
        left = _letters_of(expr.left, cache)
        right = _letters_of(expr.right, cache)
        out = (
            tuple(-s for s in reversed(left))
            + tuple(-s for s in reversed(right))
            + left
            + right
        )
    elif isinstance(expr, Prod):
        out = ()
        for p in expr.parts:
            out = out + _letters_of(p, cache)
    else:
        raise TypeError(f"cannot expand {expr!r}")
    cache[key] = out
    return out


class Gen(WordExpr):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if name not in ("a", "b"):
            raise ValueError(f"unknown generator {name!r}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_text", name)



class Pow(WordExpr):
    __slots__ = ("base", "exp")

    def __init__(self, base: WordExpr, exp: int):
        if isinstance(base, Pow):
            exp, base = exp * base.exp, base.base
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "exp", exp)
        if isinstance(base, Gen) and exp == -1:
            text = base.name.upper()
        elif isinstance(base, Prod):
            text = f"({base})^{exp}"
        else:
            text = f"{base}^{exp}"
        object.__setattr__(self, "_text", text)



class Comm(WordExpr):
    """Commutator [left, right] = left^-1 right^-1 left right."""

    __slots__ = ("left", "right")

    def __init__(self, left: WordExpr, right: WordExpr):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "_text", self._format(left, right))

    @staticmethod
    def _format(left: WordExpr, right: WordExpr) -> str:
        # compress iterated right-brackets: [x,v,v,v,v] prints as [x,_4 v]
        base, count = left, 1
        while isinstance(base, Comm) and base.right == right:
            base, count = base.left, count + 1
        if count >= 4:
            return f"[{base},_{count} {right}]"
        # left-normalized chains print as [u,v,w]
        if isinstance(left, Comm):
            return f"{left._text[:-1]},{right}]"
        return f"[{left},{right}]"



class Prod(WordExpr):
    __slots__ = ("parts",)

    def __init__(self, parts):
        flat: list[WordExpr] = []
        for p in parts:
            if isinstance(p, Prod):
                flat.extend(p.parts)
            else:
                flat.append(p)
        object.__setattr__(self, "parts", tuple(flat))
        object.__setattr__(self, "_text", " ".join(str(p) for p in flat))



A = Gen("a")
B = Gen("b")
IDENTITY = Prod(())


def power(expr: WordExpr, n: int) -> WordExpr:
    if n == 1:
        return expr
    if n == 0:
        return IDENTITY
    if isinstance(expr, Prod) and not expr.parts:
        return expr
    return Pow(expr, n)


def product(*parts: WordExpr) -> WordExpr:
    flat = [p for p in parts if not (isinstance(p, Prod) and not p.parts)]
    if len(flat) == 1:
        return flat[0]
    return Prod(flat)


def commutator(left: WordExpr, right: WordExpr) -> WordExpr:
    return Comm(left, right)


def engel(n: int, base: WordExpr = A, step: WordExpr = B) -> WordExpr:
    """Iterated commutator with n copies of `step` on the right; n = 0 gives
    `base` itself."""
    expr = base
    for _ in range(n):
        expr = Comm(expr, step)
    return expr


def alternating_engel_product(n: int) -> WordExpr:
    """Product over i < n of [[a,_{2n-1-i} b], [a,_i b]] with alternating
    exponents (-1)^i; the correction word pairing with [[a,_2n b], a]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    parts = [
        power(Comm(engel(2 * n - 1 - i), engel(i)), (-1) ** i) for i in range(n)
    ]
    return product(*parts)


# --- parser


class WordSyntaxError(ValueError):
    pass


def parse_word_expr(text: str) -> WordExpr:
    parser = _Parser(text)
    expr = parser.parse_product(stop_chars="")
    parser.skip_ws()
    if parser.pos != len(parser.text):
        raise WordSyntaxError(f"trailing input at {parser.pos}: {text!r}")
    return expr


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_product(self, stop_chars: str) -> WordExpr:
        parts = []
        while True:
            ch = self.peek()
            if not ch or ch in stop_chars:
                break
            parts.append(self.parse_term())
        return product(*parts)

    def parse_term(self) -> WordExpr:
        atom = self.parse_atom()
        if self.peek() == "^":
            self.pos += 1
            return power(atom, self.parse_int())
        return atom

    def parse_atom(self) -> WordExpr:
        ch = self.peek()
        if ch in "aAbB":
            self.pos += 1
            gen = Gen(ch.lower())
            return gen if ch.islower() else Pow(gen, -1)
        if ch == "(":
            self.pos += 1
            expr = self.parse_product(stop_chars=")")
            if self.peek() != ")":
                raise WordSyntaxError(f"unclosed parenthesis at {self.pos}")
            self.pos += 1
            return expr
        if ch == "[":
            self.pos += 1
            expr = self.parse_product(stop_chars=",]")
            if isinstance(expr, Prod) and not expr.parts:
                raise WordSyntaxError(f"empty commutator argument at {self.pos}")
            while self.peek() == ",":
                self.pos += 1
                if self.peek() == "_":
                    self.pos += 1
                    count = self.parse_int()
                    arg = self.parse_product(stop_chars=",]")
                    if count < 0 or (isinstance(arg, Prod) and not arg.parts):
                        raise WordSyntaxError(f"bad iterated commutator at {self.pos}")
                    for _ in range(count):
                        expr = Comm(expr, arg)
                else:
                    arg = self.parse_product(stop_chars=",]")
                    if isinstance(arg, Prod) and not arg.parts:
                        raise WordSyntaxError(
                            f"empty commutator argument at {self.pos}"
                        )
                    expr = Comm(expr, arg)
            if self.peek() != "]":
                raise WordSyntaxError(f"unclosed bracket at {self.pos}")
            self.pos += 1
            return expr
        raise WordSyntaxError(f"unexpected character {ch!r} at {self.pos}")

    def parse_int(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            raise WordSyntaxError(f"expected integer at {start}")
        return int(self.text[start : self.pos])


def basis_word_expr(word: str) -> WordExpr:
    """Bracket expression of a Lyndon basis word via its standard
    factorization, e.g. 'aab' -> [a,[a,b]]."""
    from .freelie import standard_factorization

    if len(word) == 1:
        return Gen(word)
    left, right = standard_factorization(word)
    return Comm(basis_word_expr(left), basis_word_expr(right))
