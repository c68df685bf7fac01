import logging

from flows.corpus import compare
from flows.serializers import load_graph
from triflow.celery import app

logger = logging.getLogger(__name__)


@app.task(queue="corpus")
def check_instance(graph_json, check):
    g = load_graph(graph_json)
    logger.debug("checking %s on %s", check, g)
    return compare(check, g)
