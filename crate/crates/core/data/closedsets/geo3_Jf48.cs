[closedset]
source = Jf48
targets = Jf49
basis = e1 e2 e3 f
group = graded
conditions:
c[1,2,1] = 0
c[1,3,1] = 0
c[1,1,1] = c[1,4,4]
