"""Search limits for the exact unordered searches."""
import time
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from vted.config import Settings

# How many expansions pass between two looks at the clock.
_CLOCK_STRIDE = 1024


class Budget(BaseModel):
    """A node-expansion limit and a wall-clock limit in seconds, whichever is hit first.

    A budget with a `deadline` is anchored: its wall-clock limit is that absolute
    `time.time()` instant, however late a search starts spending it.
    """

    model_config = ConfigDict(frozen=True)

    max_expansions: int = Field(default=10_000_000, ge=1)
    timeout: Optional[float] = Field(default=60.0, gt=0)
    deadline: Optional[float] = None

    @classmethod
    def from_settings(cls, settings: Settings) -> "Budget":
        """The budget configured in `settings`."""
        return cls(max_expansions=settings.max_expansions, timeout=settings.timeout)

    def anchored(self) -> "Budget":
        """This budget with its wall-clock limit fixed from now on, for work spread over several
        searches or worker processes.
        """
        if self.deadline is not None or self.timeout is None:
            return self
        return self.model_copy(update={"deadline": time.time() + self.timeout})

    def split(self, parts: int) -> "Budget":
        """An even share of the expansion limit for one of `parts` independent searches. Anchor
        the budget first to keep one wall-clock limit for all of them.
        """
        share = max(self.max_expansions // max(parts, 1), 1)
        return self.model_copy(update={"max_expansions": share})

    def start(self) -> "SearchClock":
        """Start spending this budget now."""
        deadline = self.anchored().deadline
        return SearchClock(self.max_expansions, deadline)


class SearchClock:
    """Running account of one budget. Several searches may draw on the same clock; once it is
    exhausted it stays exhausted.
    """

    def __init__(self, max_expansions: int, deadline: Optional[float] = None) -> None:
        """Create a clock allowing `max_expansions` expansions until `deadline`."""
        self.max_expansions = max_expansions
        self.deadline = deadline
        self.expansions = 0
        self.exhausted = False

    def expired(self) -> bool:
        """Look at the wall clock now. Returns True, and exhausts the clock, once the deadline
        has passed.
        """
        if not self.exhausted and self.deadline is not None and time.time() > self.deadline:
            self.exhausted = True
        return self.exhausted

    def tick(self) -> bool:
        """Record one expansion. Returns False once the budget is exhausted."""
        if self.exhausted:
            return False
        self.expansions += 1
        if self.expansions > self.max_expansions:
            self.exhausted = True
        elif self.expansions % _CLOCK_STRIDE == 0:
            self.expired()
        return not self.exhausted
