from django.apps import AppConfig
from . import gettext_lazy


class AnimalabConfig(AppConfig):
    name = 'animalab'
    verbose_name = gettext_lazy('Directed animals laboratory')

    def ready(self):
        from . import start
        start()
