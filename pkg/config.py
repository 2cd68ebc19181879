"""
Settings read from the environment; command line flags take precedence
"""

import os

# Seed for the randomized goal corpora used by tests and `numcert scaling`
NUMCERT_SEED = int(os.environ.get("NUMCERT_SEED", "20150401"))

NUMCERT_LOG_LEVEL = os.environ.get("NUMCERT_LOG_LEVEL", "INFO").upper()

# Goals per randomized suite in a default test run
NUMCERT_SUITE_SIZE = int(os.environ.get("NUMCERT_SUITE_SIZE", "200"))

# Deep proofs recurse this far in the provers and the JSON layer
RECURSION_LIMIT = 20000
