from harmonic_sums.cli import main

main()
