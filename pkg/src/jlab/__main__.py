from jlab.cli import main

main()
