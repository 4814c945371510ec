#!/usr/bin/env python
import sys
import sparse_factor_tools.cli
sys.exit(sparse_factor_tools.cli.main())
