[closedset]
source = Jc14
targets = Jc8 Jc49
basis = e1 e2 f1 f2
group = graded
conditions:
c[2,2,1] = 0
c[3,4,1] = 0
c[3,4,2] = 0
c[2,3,3] = c[2,2,2]
