from typing import Iterable, List, Optional

from ..core.constants import Backend, CheckOutcome


def format_check_header(label: str, formula: str) -> List[str]:
    """Заголовок проверки в формате отчёта"""
    return [
        "Checking for counterexamples to",
        f"{label}: {formula}",
    ]


def format_rounds(rounds: Iterable[int]) -> str:
    """Строка прогресса углубления"""
    return "Checking depth " + " ".join(str(r) for r in rounds)


def format_outcome(
    outcome: str,
    bindings: List[str],
    exhausted_to: Optional[int] = None,
    hit_budget: Optional[bool] = None,
    reason: str = "",
) -> List[str]:
    """Итог проверки: строки контрпримера или сообщение об исчерпании"""
    if outcome == CheckOutcome.COUNTEREXAMPLE:
        return ["Counterexample found:"] + bindings
    if outcome == CheckOutcome.RESOURCE_LIMIT:
        return [f"Resource limit reached ({reason or 'timeout'})"]
    message = "No counterexample found"
    if exhausted_to is not None:
        message += f" up to depth {exhausted_to}"
    lines = [message]
    if hit_budget is not None:
        lines.append(f"any_branch_hit_budget: {str(hit_budget).lower()}")
    return lines


def format_millis(millis: Optional[int]) -> str:
    if millis is None:
        return "-"
    if millis < 10:
        return "<0.01"
    return f"{millis / 1000:.2f}"


def format_table(headers: List[str], rows: List[List[str]]) -> str:
    """Простая текстовая таблица с выравниванием по ширине колонок"""
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def format_summary(counts: dict, total: int) -> str:
    parts = [
        f"{CheckOutcome.get_display_name(outcome)}: {count}"
        for outcome, count in counts.items() if count
    ]
    return f"{total} checks" + (" (" + ", ".join(parts) + ")" if parts else "")


def format_backend(backend: str) -> str:
    return Backend.get_display_name(backend)
