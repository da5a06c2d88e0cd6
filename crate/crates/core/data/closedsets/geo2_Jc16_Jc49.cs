[closedset]
source = Jc16
targets = Jc49
basis = e1 e2 f1 f2
group = graded
conditions:
c[2,2,1] = 0
c[1,2,1] + c[2,1,1] = 0
c[2,3,4] + c[3,2,4] = 0
c[2,4,3] + c[4,2,3] = 0
