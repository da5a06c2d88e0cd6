[closedset]
source = Jc16
targets = Jc8
basis = e1 e2 f1 f2
group = graded
conditions:
c[2,3,3] + c[2,4,4] = c[2,2,2] + c[1,2,1]
c[1,1,1] + c[1,2,2] + c[1,4,4] = c[1,3,3] + 2 c[3,1,3]
