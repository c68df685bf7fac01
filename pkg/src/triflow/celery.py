import os

from celery import Celery

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "triflow.settings")


app = Celery("triflow")
app.config_from_object("django.conf:settings", namespace="CELERY")
app.conf.task_routes = {
    "flows.tasks.check_instance": {"queue": "corpus"},
}

app.autodiscover_tasks()
