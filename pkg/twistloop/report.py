# twistloop/report.py
from dataclasses import dataclass, field


@dataclass
class Report:
    """Tally of one verification scan: how many identities were checked and which failed."""

    name: str
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    def check(self, ok, *detail):
        self.checked += 1
        if not ok:
            self.failures.append(detail)
        return ok

    def skip(self, *detail):
        self.skipped += 1

    def merge(self, other):
        self.checked += other.checked
        self.skipped += other.skipped
        self.failures.extend(other.failures)
        return self

    @property
    def ok(self):
        return not self.failures

    def summary(self):
        text = f"{self.checked} checked, {len(self.failures)} failed"
        if self.skipped:
            text += f", {self.skipped} skipped"
        if self.failures:
            text += f"; first failure: {self.failures[0]}"
        return text
