[closedset]
source = Jf47
targets = Jf49
basis = e1 e2 e3 f
group = graded
conditions:
A1*A4 = 0
