from cli import main
import logging
import sys


if __name__ == '__main__':
    logging.basicConfig()
    sys.exit(main())
