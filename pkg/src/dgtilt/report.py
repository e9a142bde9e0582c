"""Plain-text verification reports, one check per line."""

from dataclasses import dataclass, field

PASS, FAIL, WARN = "PASS", "FAIL", "WARN"
LEVELS = ("module-iso", "quasi-iso", "exactness", "axiom")


@dataclass
class Entry:
    name: str
    level: str
    status: str
    witness: str = ""

    def render(self):
        line = f"{self.status}  {self.level}  {self.name}"
        if self.witness:
            line += f" — {self.witness}"
        return line


@dataclass
class Report:
    entries: list = field(default_factory=list)

    def add(self, name, level, ok, witness=""):
        if level not in LEVELS:
            raise ValueError(f"unknown level {level!r}")
        self.entries.append(Entry(name, level, PASS if ok else FAIL, witness))
        return ok

    def warn(self, name, level, witness):
        self.entries.append(Entry(name, level, WARN, witness))

    def extend(self, other, prefix=""):
        for e in other.entries:
            self.entries.append(Entry(prefix + e.name, e.level, e.status, e.witness))
        return self

    @property
    def ok(self):
        return all(e.status != FAIL for e in self.entries)

    @property
    def failures(self):
        return [e for e in self.entries if e.status == FAIL]

    @property
    def warnings(self):
        return [e for e in self.entries if e.status == WARN]

    def status_of(self, name):
        for e in self.entries:
            if e.name == name:
                return e.status
        raise KeyError(name)

    def render(self):
        lines = [e.render() for e in self.entries]
        lines.append(f"OVERALL {PASS if self.ok else FAIL}")
        return "\n".join(lines) + "\n"
