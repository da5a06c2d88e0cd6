[closedset]
source = Jf22
targets = Jf25
basis = e1 e2 e3 f
group = graded
conditions:
c[2,2,1] = 0
c[2,2,2] = 0
c[3,3,1] = 0
c[3,3,2] = 0
c[3,3,3] = c[3,4,4]
