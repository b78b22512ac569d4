import pytest

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


class _Recorder:
    def __call__(self, criterion: int, ok: bool, detail: str) -> bool:
        prev = _ACCEPTANCE.get(criterion)
        # a criterion recorded by several tests passes only if all parts pass
        if prev is not None:
            ok = ok and prev[0]
            detail = f"{prev[1]}; {detail}"
        _ACCEPTANCE[criterion] = (bool(ok), detail)
        line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        return bool(ok)


@pytest.fixture
def record():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[crit]
        terminalreporter.write_line(f"criterion {crit:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
