from datetime import datetime, timezone

import pytest

from newstrend.corpus import NewsRecord, TokenizedDoc


def make_record(
    rec_id="r1",
    title="Stocks rise on earnings",
    content="x" * 300,
    published="2020-01-08T12:00:00Z",
    categories=(),
    worthiness=None,
    url=None,
):
    dt = datetime.strptime(published, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=timezone.utc)
    return NewsRecord(
        id=rec_id,
        url=url if url is not None else f"https://example.com/{rec_id}",
        title=title,
        content=content,
        published=dt,
        categories=frozenset(categories),
        worthiness=worthiness,
    )


def make_doc(rec_id, tokens):
    return TokenizedDoc(record_id=rec_id, tokens=tuple(tokens))


@pytest.fixture
def record_factory():
    return make_record
