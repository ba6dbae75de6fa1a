from knotball.main import main

main()
