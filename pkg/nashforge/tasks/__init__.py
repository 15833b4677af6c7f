if __package__=="nashforge.tasks":
    from ..utils import *
else:
    import os, sys
    parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    sys.path.append(parent_dir)
    from utils import *

from .base_task import *
from .nash_tasks import *
from .charp_tasks import *
from .quotient_task import *

taskdict = {
    "nash-check": NashCheckTask,
    "diffpower": DiffPowerTask,
    "pparts": PPartsTask,
    "core-chain": CoreChainTask,
    "fpure": FPureTask,
    "kunz": KunzTask,
    "smooth": SmoothTask,
    "quotient": QuotientTask,
    "oracle": OracleTask,
    "summary": SummaryTask
}
