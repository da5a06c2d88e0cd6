[closedset]
source = J19
targets = J7 J15 J16
basis = f1 f2 f3 e
group = graded
conditions:
A2*A2 <= A2
c[1,4,1] = c[4,4,4]
c[2,4,2] = c[4,4,4]
c[3,4,3] = c[4,4,4]
