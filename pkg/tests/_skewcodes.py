"""Table-driven mirror of dual-number skew arithmetic, for the exhaustive
acceptance sweeps.

A dual element a + b*eps over a field of p^n elements is packed into the
single integer a_code + card * b_code; all tables are generated from the
library's own field arithmetic, so this lane shares the element semantics
but none of the skew-layer code paths it is used to cross-check.
"""

from drinfeld.dual import DualNumbers


class DualCodes:
    def __init__(self, field, max_frob=10):
        self.field = field
        card = field.cardinality
        self.card = card
        self.size = card * card
        els = [field.from_code(c) for c in range(card)]
        mulF = [[(a * b).code for b in els] for a in els]
        addF = [[(a + b).code for b in els] for a in els]
        self.one = 1
        self.zero = 0
        MUL = [0] * (self.size * self.size)
        ADD = [0] * (self.size * self.size)
        for x in range(self.size):
            a1, b1 = x % card, x // card
            for y in range(self.size):
                a2, b2 = y % card, y // card
                MUL[x * self.size + y] = (
                    mulF[a1][a2] + card * addF[mulF[a1][b2]][mulF[b1][a2]]
                )
                ADD[x * self.size + y] = addF[a1][a2] + card * addF[b1][b2]
        self.MUL = MUL
        self.ADD = ADD
        self.UNIT = [x % card != 0 for x in range(self.size)]
        self.NILP = [x % card == 0 for x in range(self.size)]
        inv = [0] * self.size
        for x in range(self.size):
            if self.UNIT[x]:
                a, b = x % card, x // card
                ai = els[a].inverse()
                eps_part = -(ai * ai * els[b])
                inv[x] = ai.code + card * eps_part.code
        self.INV = inv
        frobs = []
        for i in range(max_frob):
            row = [0] * self.size
            for x in range(self.size):
                a, b = x % card, x // card
                if i == 0:
                    row[x] = x
                else:
                    row[x] = els[a].frobenius(i).code
            frobs.append(row)
        self.FROB = frobs
        self.nilpotent_codes = [x for x in range(self.size) if self.NILP[x]]
        D = DualNumbers(field)
        self._dual = D

    def to_element(self, code):
        return self._dual.element(
            self.field.from_code(code % self.card),
            self.field.from_code(code // self.card),
        )

    # -- skew polynomials as tuples of codes ------------------------------

    def trim(self, f):
        f = list(f)
        while f and f[-1] == 0:
            f.pop()
        return tuple(f)

    def smul(self, f, g):
        if not f or not g:
            return ()
        MUL, ADD, FROB, size = self.MUL, self.ADD, self.FROB, self.size
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if not a:
                continue
            fr = FROB[i]
            base = a * size
            for j, b in enumerate(g):
                if b:
                    out[i + j] = ADD[out[i + j] * size + MUL[base + fr[b]]]
        return self.trim(out)

    def sadd(self, f, g):
        ADD, size = self.ADD, self.size
        if len(f) < len(g):
            f, g = g, f
        out = list(f)
        for i, b in enumerate(g):
            out[i] = ADD[out[i] * size + b]
        return self.trim(out)

    def sneg(self, f):
        # char p: negate both components
        card = self.card
        out = []
        for x in f:
            a, b = x % card, x // card
            na = (-self.field.from_code(a)).code
            nb = (-self.field.from_code(b)).code
            out.append(na + card * nb)
        return self.trim(out)

    def rank_index(self, f):
        n = None
        for i, c in enumerate(f):
            if self.UNIT[c]:
                n = i
        return n

    def standardize(self, f):
        """(sigma, std), mirroring the library algorithm on codes."""
        n = self.rank_index(f)
        if n is None:
            raise ValueError("not finite")
        MUL, size = self.MUL, self.size
        sigma = (1,)
        cur = self.trim(f)
        while len(cur) - 1 > n:
            m = len(cur) - 1
            c = MUL[cur[m] * size + self.INV[self.FROB[m - n][cur[n]]]]
            step = self.trim([1] + [0] * (m - n - 1) + [c])
            neg_c = self.sneg((c,))[0] if c else 0
            step_inv = self.trim([1] + [0] * (m - n - 1) + [neg_c])
            cur = self.smul(step_inv, self.smul(cur, step))
            sigma = self.smul(sigma, step)
        return sigma, cur
