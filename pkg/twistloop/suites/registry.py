# twistloop/suites/registry.py
import logging

from . import checks

logger = logging.getLogger(__name__)

# Suite IDs (used on the command line and in config "suites") mapped to the
# functions that run them.
SUITE_REGISTRY = {
    # --- Root data and structure constants ---
    "signs": checks.check_signs,
    "folded-cartan": checks.check_folded_cartan,

    # --- Loop algebra ---
    "chevalley-pairs": checks.check_chevalley_pairs,
    "serre": checks.check_serre,
    "graded": checks.check_graded,

    # --- Group words, kernel and center ---
    "kernel": checks.check_kernel,
    "center": checks.check_center,
    "gal-act": checks.check_gal_act,
    "diagram": checks.check_diagram,
    "alaws": checks.check_alaws,

    # --- Matrix models ---
    "matrep": checks.check_matrep,
    "su3": checks.check_su3,
}


def get_suite_function(suite_id):
    """Returns the function for a suite ID, or None when it is not registered."""
    func = SUITE_REGISTRY.get(suite_id)
    if func is None:
        logger.warning("WARN: Suite ID '%s' not found in registry!", suite_id)
    return func


def get_available_suite_ids():
    return list(SUITE_REGISTRY.keys())
