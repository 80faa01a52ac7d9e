"""
The request space analyses enumerate.

A request of the space carries exactly one token of every non-empty
category. Requests are produced in lexicographic order of their tokens,
categories in canonical order, the first category varying slowest.
"""

import itertools
import logging
import math
from typing import Iterator, List, Sequence, Tuple

from xacml_analyzer.exception.exceptions import BudgetExceededException, EmptyDomainException
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.enums import AttrCategory
from xacml_analyzer.models.request import Request
from xacml_analyzer.models.store import PolicyStore

logger = logging.getLogger(__name__)


class RequestSpace:
    """
    Single-value-per-category requests over a set of domains.

    Examples:
        >>> space = RequestSpace(AttributeDomains.of(subject=["doctor", "nurse"]))
        >>> space.size
        2
        >>> [str(q) for q in space]
        ['{subject(doctor)}', '{subject(nurse)}']
    """

    def __init__(self, domains: AttributeDomains) -> None:
        self._domains = domains
        self._categories: Tuple[AttrCategory, ...] = tuple(
            category for category in AttrCategory.ordered() if domains.size(category)
        )

    @property
    def domains(self) -> AttributeDomains:
        return self._domains

    @property
    def categories(self) -> Tuple[AttrCategory, ...]:
        """Categories contributing a token to every request."""
        return self._categories

    @property
    def size(self) -> int:
        """Number of requests; 1 when every category is empty."""
        return math.prod(self._domains.size(category) for category in self._categories)

    def check_budget(self, budget: int) -> None:
        """
        Refuse spaces larger than the budget.

        Raises:
            BudgetExceededException: With the space size
        """
        if self.size > budget:
            raise BudgetExceededException(self.size, budget)

    def check_referenced(self, store: PolicyStore) -> None:
        """
        Refuse to analyse a store over a category it uses but that has no values.

        Raises:
            EmptyDomainException: For the first such category
        """
        for category in AttrCategory.ordered():
            if category in store.referenced_categories() and not self._domains.size(category):
                raise EmptyDomainException(
                    f"category '{category.value}' is used by the policies but its domain is empty",
                    context={"category": category.value},
                )

    def __iter__(self) -> Iterator[Request]:
        token_lists = [self._domains.tokens(category) for category in self._categories]
        for combination in itertools.product(*token_lists):
            yield Request.of(
                {category: [token] for category, token in zip(self._categories, combination)}
            )

    def __len__(self) -> int:
        return self.size

    def partition(self, parts: int) -> List[List[Request]]:
        """
        Split the space into at most ``parts`` contiguous chunks.

        Concatenating the chunks gives the space in iteration order.
        """
        requests = list(self)
        if parts <= 1 or len(requests) <= 1:
            return [requests]
        chunk = math.ceil(len(requests) / parts)
        return [requests[i : i + chunk] for i in range(0, len(requests), chunk)]

    def saturated(self) -> Request:
        """The request carrying every declared token of every category."""
        return Request.of(
            {category: self._domains.tokens(category) for category in AttrCategory.ordered()}
        )


def request_order_key(request: Request) -> Sequence[Tuple[str, ...]]:
    """Sort key placing requests in the space's iteration order."""
    return request.category_tokens()
