"""
Used to launch the fsdnet cli from a checkout

"""
from fsdnet.cli import main


if __name__ == "__main__":
    main()
