[closedset]
source = Jc62
targets = Jc50 Jc58 Jc65
basis = e1 e2 f1 f2
group = graded
conditions:
c[1,2,1] = 0
2 c[1,1,1] - c[1,2,2] - c[1,3,3] - c[1,4,4] = 0
