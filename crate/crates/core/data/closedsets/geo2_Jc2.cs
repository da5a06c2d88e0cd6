[closedset]
source = Jc2
targets = Jc1 Jc8 Jc10 Jc12 Jc13 Jc14 Jc16 Jc24 Jc32 Jc42 Jc49
basis = e1 e2 f1 f2
group = graded
conditions:
A1*A3 <= A4
c[1,2,2] = c[1,4,4]
c[2,4,4] = c[2,2,2]
c[1,1,2] c[2,3,4] = c[1,3,4] (c[1,4,4] - c[1,1,1])
