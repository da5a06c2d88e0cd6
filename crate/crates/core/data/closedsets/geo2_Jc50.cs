[closedset]
source = Jc50
targets = Jc58
basis = e1 e2 f1 f2
group = graded
conditions:
c[1,2,1] = 0
c[1,3,3] = 0
