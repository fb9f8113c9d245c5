"""Run the verification suites over the catalog."""

from __future__ import annotations

import asyncio
import logging

from .catalog import catalog_entries
from .chainrank import ChainRankBase
from .const import DEFAULT_VERIFY_MAX_ORDER
from .models import Suite, VerifyOutcome
from .verify import check_entry

LOGGER = logging.getLogger(__name__)


class ChainRankVerify(ChainRankBase):
    """Class used to run verification suites through a shared ChainRank."""

    async def async_run_suite(
        self,
        suite: Suite,
        max_order: int = DEFAULT_VERIFY_MAX_ORDER,
        seed: int = 0,
        names: list[str] | None = None,
    ) -> VerifyOutcome:
        """Run a suite; ``Suite.ALL`` runs the other three in turn."""
        if suite is Suite.ALL:
            outcome = VerifyOutcome(Suite.ALL)
            for part in (Suite.ORACLE, Suite.MARKING, Suite.LEMMAS):
                outcome.merge(await self.async_run_suite(part, max_order, seed, names))
            return outcome
        entries = [
            entry.name
            for entry in catalog_entries(max_order)
            if names is None or entry.name in names
        ]
        LOGGER.debug("Running suite %s on %s groups", suite, len(entries))
        results = await asyncio.gather(
            *(
                self._api.async_compute(check_entry, suite, name, seed, self._api.limits)
                for name in entries
            )
        )
        outcome = VerifyOutcome(suite)
        for result in results:
            outcome.merge(result)
        return outcome
