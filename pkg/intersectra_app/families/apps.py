from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class FamiliesConfig(AppConfig):
    """Configuration for the families application."""

    name = "families"
    verbose_name = _("Intersecting families")
