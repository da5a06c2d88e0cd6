[closedset]
source = J11
targets = J7 J15 J16
basis = f1 f2 f3 e
group = graded
conditions:
c[*,*,1] = 0
2 c[3,4,3] = c[4,4,4]
