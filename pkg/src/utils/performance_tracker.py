"""
Performance Tracker za računske sekcije
Meri trajanje konstrukcije karata, nabrajanja ciklusa i renderovanja
"""

import time
import statistics
from typing import Any, Callable, Dict, List, Optional
from functools import wraps


class PerformanceTracker:
    """Prati trajanje imenovanih sekcija (samo u memoriji)."""

    def __init__(self):
        self.current_metrics: Dict[str, Dict[str, Any]] = {}
        self.all_metrics: List[Dict[str, Any]] = []
        self._counter = 0

    def start_tracking(self, section: str) -> str:
        """
        Počinje praćenje sekcije.

        Args:
            section: Ime sekcije (npr. "cycles", "chart:ritt")

        Returns:
            ID praćenja
        """
        self._counter += 1
        tracking_id = f"{section}_{self._counter}"
        self.current_metrics[tracking_id] = {
            "section": section,
            "start_time": time.perf_counter(),
        }
        return tracking_id

    def end_tracking(self, tracking_id: str,
                     success: bool = True,
                     error: Optional[str] = None,
                     additional_data: Optional[Dict] = None) -> Optional[Dict[str, Any]]:
        """
        Završava praćenje i beleži metrike.

        Args:
            tracking_id: ID praćenja
            success: Da li je sekcija uspela
            error: Opis greške ako nije uspela
            additional_data: Dodatni podaci
        """
        if tracking_id not in self.current_metrics:
            return None

        metrics = self.current_metrics.pop(tracking_id)
        duration = time.perf_counter() - metrics.pop("start_time")
        metrics.update({
            "duration_seconds": round(duration, 6),
            "success": success,
            "error": error,
        })
        if additional_data:
            metrics.update(additional_data)

        self.all_metrics.append(metrics)
        return metrics

    def track(self, section: str):
        """
        Dekorator za automatsko praćenje funkcije.

        Args:
            section: Ime sekcije
        """
        def decorator(func: Callable):
            @wraps(func)
            def wrapper(*args, **kwargs):
                tracking_id = self.start_tracking(section)
                try:
                    result = func(*args, **kwargs)
                    self.end_tracking(tracking_id, success=True)
                    return result
                except Exception as e:
                    self.end_tracking(tracking_id, success=False, error=str(e))
                    raise
            return wrapper
        return decorator

    def section_stats(self, section: str) -> Dict[str, Any]:
        """Statistika za jednu sekciju."""
        durations = [m["duration_seconds"] for m in self.all_metrics if m["section"] == section]
        if not durations:
            return {"section": section, "calls": 0}
        failures = sum(1 for m in self.all_metrics if m["section"] == section and not m["success"])
        return {
            "section": section,
            "calls": len(durations),
            "failures": failures,
            "total_seconds": round(sum(durations), 6),
            "avg_seconds": round(statistics.mean(durations), 6),
            "max_seconds": round(max(durations), 6),
        }

    def summary(self) -> Dict[str, Dict[str, Any]]:
        """Statistika svih sekcija, za timing deo izveštaja."""
        sections = sorted({m["section"] for m in self.all_metrics})
        return {section: self.section_stats(section) for section in sections}

    def reset(self):
        self.current_metrics.clear()
        self.all_metrics.clear()
        self._counter = 0


# Globalna instanca
tracker = PerformanceTracker()
