"""The line-search filter."""

import logging

logger = logging.getLogger(__name__)


class Filter:
    """Set of ``(theta, phi)`` pairs that trial points must not be dominated by.

    Pairs are stored as inserted, so any envelope margins must already be
    applied by the caller. A trial is acceptable when, against every entry,
    it is strictly better in at least one coordinate.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: list[tuple[float, float]] | None = None) -> None:
        """Start empty or from ``entries`` (dominated pairs are pruned)."""
        self._entries: list[tuple[float, float]] = []
        for theta, phi in entries or []:
            self.add(theta, phi)

    def __len__(self) -> int:
        return len(self._entries)

    def is_acceptable(self, theta: float, phi: float) -> bool:
        """True if no entry dominates ``(theta, phi)``."""
        return all(theta < t or phi < p for t, p in self._entries)

    def add(self, theta: float, phi: float) -> None:
        """Insert a pair and drop the entries it dominates.

        A pair that is itself dominated by an existing entry is not stored.
        """
        if any(t <= theta and p <= phi for t, p in self._entries):
            return
        self._entries = [
            (t, p) for t, p in self._entries if not (theta <= t and phi <= p)
        ]
        self._entries.append((theta, phi))
        logger.debug("filter += (%.3e, %.6e), %d entries", theta, phi, len(self))

    def reset(self) -> None:
        """Remove every entry."""
        self._entries.clear()

    def snapshot(self) -> tuple[tuple[float, float], ...]:
        """Entries as an immutable tuple."""
        return tuple(self._entries)
