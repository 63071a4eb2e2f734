"""Collects one summary line per acceptance criterion."""
LINES = []


def record(number: int, ok: bool, summary: str, seconds: float) -> str:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {summary}  ({seconds:.2f}s)"
    LINES.append(line)
    print(line)
    return line
