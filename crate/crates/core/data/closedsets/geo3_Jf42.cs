[closedset]
source = Jf42
targets = Jf43 Jf51 Jf57 Jf58
basis = e1 e2 e3 f
group = graded
conditions:
A1*A4 = 0
