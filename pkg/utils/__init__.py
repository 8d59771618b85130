"""Utils package."""
from utils.errors import DomainError, PolyaError, ResourceLimitError
from utils.logger import get_logger
from utils.settings import Settings, load_settings

__all__ = [
    "DomainError",
    "PolyaError",
    "ResourceLimitError",
    "Settings",
    "get_logger",
    "load_settings",
]
