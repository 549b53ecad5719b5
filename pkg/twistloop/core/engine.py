# twistloop/core/engine.py
import logging
from concurrent.futures import ThreadPoolExecutor

from twistloop.config.manager import ConfigManager
from twistloop.errors import ConfigError, TwistLoopError
from twistloop.suites.registry import SUITE_REGISTRY, get_available_suite_ids, get_suite_function

logger = logging.getLogger(__name__)

STATUSES = ("pass", "fail", "error", "skip")


def record_key(record):
    return (record["suite"], record["case"], record["detail"])


class Engine:
    """Runs verification suites for one case and collects their report records."""

    def __init__(self, config_path="config.json", overrides=None):
        logger.debug("Engine: Initializing")
        self.config_manager = ConfigManager(config_path)
        self.overrides = dict(overrides or {})
        self.settings = {}
        self.workers = 1
        self._load_configuration()

    def _load_configuration(self):
        logger.debug("Engine: Loading configuration from '%s'", self.config_manager.config_path)
        self.settings = self.config_manager.get_settings()
        workers = self.overrides.get("workers")
        self.workers = int(workers if workers is not None else self.settings.get("workers", 1))
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")

    def _initialize_suites(self, suite_ids):
        """Expands 'all', validates every id and builds the per-suite configs up front."""
        if suite_ids in (None, "all") or "all" in suite_ids:
            suite_ids = get_available_suite_ids()
        unknown = [s for s in suite_ids if get_suite_function(s) is None]
        if unknown:
            raise ConfigError(f"Unknown suite(s): {', '.join(unknown)}; available: {', '.join(SUITE_REGISTRY)}")
        configs = {s: self.config_manager.build_suite_config(s, **self.overrides) for s in suite_ids}
        logger.debug("Engine: %d suite(s) ready: %s", len(configs), list(configs))
        return configs

    def run_suite(self, suite_id, cfg=None):
        cfg = cfg or self.config_manager.build_suite_config(suite_id, **self.overrides)
        func = get_suite_function(suite_id)
        logger.info("Engine: Running '%s' on %s", suite_id, cfg.case)
        try:
            records = func(cfg)
        except TwistLoopError as e:
            logger.debug("Engine: Suite '%s' raised", suite_id, exc_info=True)
            logger.error("Engine: Suite '%s' failed with %s: %s", suite_id, type(e).__name__, e)
            records = [{"suite": suite_id, "case": cfg.case, "status": "error",
                        "detail": f"{type(e).__name__}: {e}"}]
        return [self._validate_record(suite_id, rec) for rec in records]

    @staticmethod
    def _validate_record(suite_id, record):
        if record.get("status") in STATUSES:
            return record
        logger.error("Engine: Suite '%s' produced a record with status %r", suite_id, record.get("status"))
        return {**record, "status": "error",
                "detail": f"unknown status {record.get('status')!r}: {record.get('detail', '')}"}

    def run(self, suite_ids="all"):
        """All records of the requested suites, sorted by (suite, case, detail)."""
        configs = self._initialize_suites(suite_ids)
        if self.workers > 1 and len(configs) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                batches = list(pool.map(lambda item: self.run_suite(*item), configs.items()))
        else:
            batches = [self.run_suite(s, cfg) for s, cfg in configs.items()]
        records = sorted((rec for batch in batches for rec in batch), key=record_key)
        failed = sum(1 for rec in records if rec["status"] in ("fail", "error"))
        logger.info("Engine: %d record(s), %d failing", len(records), failed)
        return records

    @staticmethod
    def exit_code(records):
        return 1 if any(rec["status"] in ("fail", "error") for rec in records) else 0
