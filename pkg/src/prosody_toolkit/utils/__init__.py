"""
Utility subpackage for the prosody toolkit.

```
from prosody_toolkit.utils import get_logger, read_json, write_json
```
"""

from .jsonio import read_json, write_json
from .logger import get_logger, set_level

__all__ = ["get_logger", "set_level", "read_json", "write_json"]
