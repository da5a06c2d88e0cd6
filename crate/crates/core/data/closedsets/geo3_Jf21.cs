[closedset]
source = Jf21
targets = Jf22 Jf23 Jf25 Jf26
basis = e1 e2 e3 f
group = graded
conditions:
A1*A4 = 0
