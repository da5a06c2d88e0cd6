[closedset]
source = Jf53
targets = Jf54 Jf55
basis = e1 e2 e3 f
group = graded
conditions:
A1*A4 = 0
