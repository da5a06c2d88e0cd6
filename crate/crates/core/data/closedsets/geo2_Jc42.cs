[closedset]
source = Jc42
targets = Jc49
basis = e1 e2 f1 f2
group = graded
conditions:
c[2,2,1] = 0
c[2,2,2] = 0
c[1,4,2] c[2,4,2] = -c[1,4,3] c[3,4,2]
c[3,1,3] = c[1,1,1] - c[1,3,3]
