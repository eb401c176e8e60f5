#!/usr/bin/env python3

from patcalc.cli import main


if __name__ == "__main__":
    main()
