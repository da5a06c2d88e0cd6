[closedset]
source = Jc56
targets = Jc50 Jc54 Jc57 Jc58 Jc62 Jc64 Jc65
basis = e1 e2 f1 f2
group = graded
conditions:
c[4,1,4] - c[1,2,2] - c[1,3,3] = 0
c[2,4,3] c[4,3,2] - (c[2,4,2])^2 = 0
c[2,2,2] = 0
c[1,1,1] - c[1,2,2] - c[1,3,3] - c[1,4,4] = 0
