[closedset]
source = Jf54
targets = Jf55
basis = e1 e2 e3 f
group = graded
conditions:
c[3,4,4] = 0
c[2,4,4] = 0
c[1,1,1] = c[1,4,4]
