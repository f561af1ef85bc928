"""Check reports: ordered lists of failures with witnesses."""

from dataclasses import dataclass, field
import json


@dataclass(frozen=True)
class Failure:
    kind: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        w = ", ".join(map(str, self.witness))
        s = f"{self.kind} at ({w})"
        return f"{s}: {self.detail}" if self.detail else s


@dataclass
class Report:
    """Outcome of a structural check.

    ``necessary_only`` marks probes that test a necessary condition of a
    homotopy-invariant property (cofinality, siftedness) rather than the
    property itself.
    """

    title: str
    failures: list = field(default_factory=list)
    checked: int = 0
    necessary_only: bool = False
    notes: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures

    def fail(self, kind, witness, detail=""):
        self.failures.append(Failure(kind, tuple(witness), detail))

    def count(self, n=1):
        self.checked += n

    def merge(self, other, prefix=""):
        self.checked += other.checked
        for f in other.failures:
            self.failures.append(Failure(prefix + f.kind, f.witness, f.detail))
        return self

    def __bool__(self):
        return self.ok

    def verdict(self):
        v = "pass" if self.ok else "FAIL"
        return f"NECESSARY-ONLY: {v}" if self.necessary_only else v

    def lines(self):
        out = [f"{self.title}: {self.verdict()} ({self.checked} checked, "
               f"{len(self.failures)} failures)"]
        out += [f"  note: {n}" for n in self.notes]
        out += [f"  - {f}" for f in self.failures]
        return out

    def __str__(self):
        return "\n".join(self.lines())

    def to_dict(self):
        return {
            "title": self.title,
            "ok": self.ok,
            "necessary_only": self.necessary_only,
            "checked": self.checked,
            "failures": [
                {"kind": f.kind, "witness": [str(w) for w in f.witness], "detail": f.detail}
                for f in self.failures
            ],
            "notes": list(self.notes),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)
