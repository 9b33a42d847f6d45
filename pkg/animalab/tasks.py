from celery import shared_task
from celery.utils.log import get_task_logger

from . import experiments

logger = get_task_logger(__name__)


@shared_task(name="runStream")
def runStream(config, stream_id, trials):
    config = experiments.ExperimentConfig.from_json(config)
    logger.info("Stream %d of %s: running %d trials...",
                stream_id, config.name, trials)

    tally = experiments.run_trials(config, stream_id, trials)

    logger.info("Stream %d of %s done (%d capped).",
                stream_id, config.name, tally.capped)
    return tally.to_json()
