'''
Description:
命令行入口, 等价于 python -m cato_wds.cli
'''
import sys

from cato_wds.cli import main

if __name__ == '__main__':
    sys.exit(main())
