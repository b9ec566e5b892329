"""Make callable via `python -m acm_atlas`"""

from __future__ import annotations

from acm_atlas.cli import main

raise SystemExit(main())
