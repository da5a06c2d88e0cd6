[closedset]
source = Jc1
targets = Jc8 Jc49
basis = e1 e2 f1 f2
group = graded
conditions:
A1*A3 = 0
