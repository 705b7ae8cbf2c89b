"""Small pass/fail report object shared by all the checkers."""


class Report:
    def __init__(self, subject: str = ""):
        self.subject = subject
        self.failures = []  # (law, witness) pairs
        self.checked = []
        self.notes = []
        self.value = None  # optional computed result, e.g. a derivation bound

    def check(self, law: str, ok: bool, witness=None) -> bool:
        if law not in self.checked:
            self.checked.append(law)
        if not ok:
            self.failures.append((law, witness))
        return ok

    def fail(self, law: str, witness=None):
        self.check(law, False, witness)

    def note(self, msg: str):
        self.notes.append(msg)

    def extend(self, other: "Report", prefix: str = ""):
        for law in other.checked:
            name = prefix + law
            if name not in self.checked:
                self.checked.append(name)
        for law, w in other.failures:
            self.failures.append((prefix + law, w))
        self.notes.extend(other.notes)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def failed_laws(self):
        seen = []
        for law, _ in self.failures:
            if law not in seen:
                seen.append(law)
        return seen

    def to_dict(self):
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checked": list(self.checked),
            "failures": [{"law": law, "witness": _plain(w)} for law, w in self.failures],
            "notes": list(self.notes),
            "value": _plain(self.value),
        }

    def summary(self) -> str:
        head = f"{self.subject or 'check'}: {'PASS' if self.ok else 'FAIL'}"
        lines = [head]
        for law, w in self.failures[:20]:
            lines.append(f"  {law}: {_plain(w)}")
        if len(self.failures) > 20:
            lines.append(f"  ... {len(self.failures) - 20} more")
        return "\n".join(lines)

    def __repr__(self):
        return f"Report({self.subject!r}, ok={self.ok}, failures={len(self.failures)})"


def _plain(w):
    from fractions import Fraction
    if isinstance(w, Fraction):
        return str(w)
    if isinstance(w, (list, tuple)):
        return [_plain(v) for v in w]
    if isinstance(w, (set, frozenset)):
        return sorted((_plain(v) for v in w), key=str)
    if isinstance(w, dict):
        return {str(k): _plain(v) for k, v in w.items()}
    if w is None or isinstance(w, (int, str, bool)):
        return w
    return str(w)
