"""
Constants module providing workbench defaults and reserved name prefixes
"""

from pathlib import Path


class Constants:
    """
    Static class containing program constants
    """

    # Program constants
    programName = "patcalc 0.1"
    defaultDepth = 64  # Exploration depth limit
    defaultNodes = 10000  # Exploration node limit
    strictCond = True  # Conditional terms must be names outside intensional languages
    defaultLogLevel = "WARNING"
    configDirName = ".patcalc"
    commentPrefix = "#"  # Corpus comment lines, after leading blanks
    configHomeVar = "PATCALC_HOME"

    # Reserved names (never produced by the parser unless explicitly allowed)
    reservedPrefix = "#"
    arityTag = "#r"  # Tags the spine of a flattened tuple
    freshPrefix = "#f"  # Fresh names of encodings and capture avoidance
    channelPrefix = "#k"  # Channel standing for an arity when embedding dataspaces
    canonicalPrefix = "#n"  # Binders of canonical forms
    unfoldPrefix = "#u"  # Restrictions exposed by unfolding a replication
    scratchPrefix = "#t"  # Temporary names while canonicalising
    alphaPrefix = "#v"  # Binders of alpha-normal forms
    placeholderName = "#_"  # Restricted names not yet numbered while canonicalising

    # Shipped data
    assetsDir = Path(__file__).resolve().parent.parent / "assets"
    defaultCorpusPath = assetsDir / "examples.corpus"
    replicationCorpusPath = assetsDir / "replication.corpus"

    # Backward correspondence slack (steps) on top of the composed profile
    profileSlack = 2
