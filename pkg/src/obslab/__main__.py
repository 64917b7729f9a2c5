from obslab.cli import main

main()
