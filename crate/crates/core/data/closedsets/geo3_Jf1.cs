[closedset]
source = Jf1
targets = Jf2 Jf3 Jf4
basis = e1 e2 e3 f
group = graded
conditions:
A1*A4 = 0
