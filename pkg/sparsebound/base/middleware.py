import logging
import sys

from pyeventsystem.middleware import dispatch as pyevent_dispatch
from pyeventsystem.middleware import intercept
from pyeventsystem.middleware import observe

import six

from ..interfaces.exceptions import SparseBoundBaseException

log = logging.getLogger(__name__)


dispatch = pyevent_dispatch


class EventDebugLoggingMiddleware(object):
    """
    Logs the parameters and result of every service call. Grid functions
    are logged through their repr, so the output stays short even for large
    grids.
    """
    @observe(event_pattern="*", priority=100)
    def pre_log_event(self, event_args, *args, **kwargs):
        log.debug("Event: %s, args: %s kwargs: %s",
                  event_args.get("event"), args, kwargs)

    @observe(event_pattern="*", priority=4900)
    def post_log_event(self, event_args, *args, **kwargs):
        log.debug("Event: %s, result: %s",
                  event_args.get("event"), event_args.get("result"))


class ExceptionWrappingMiddleware(object):
    """
    Wraps all unhandled exceptions in sparsebound exceptions.
    """
    @intercept(event_pattern="*", priority=1050)
    def wrap_exception(self, event_args, *args, **kwargs):
        next_handler = event_args.pop("next_handler")
        if not next_handler:
            return
        try:
            return next_handler.invoke(event_args, *args, **kwargs)
        except Exception as e:
            if isinstance(e, SparseBoundBaseException):
                raise
            ex_type, ex_value, _ = sys.exc_info()
            log.exception("Unexpected error in %s", event_args.get("event"))
            sb_ex = SparseBoundBaseException(
                "SparseBoundBaseException: {0} from exception type: {1}"
                .format(ex_value, ex_type))
            six.raise_from(sb_ex, e)
