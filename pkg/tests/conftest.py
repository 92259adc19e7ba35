import pytest

from eichlerclass.arith import is_prime

# criterion number -> (description, passed)
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def primes_below(n: int) -> list[int]:
    return [p for p in range(2, n) if is_prime(p)]


@pytest.fixture
def acceptance():
    def record(number: int, description: str, ok: bool) -> None:
        ACCEPTANCE[number] = (description, ok)
        print(f"ACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}  {description}")
        assert ok, description

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        description, ok = ACCEPTANCE[number]
        terminalreporter.write_line(f"{number:>2}. {'PASS' if ok else 'FAIL'}  {description}")
