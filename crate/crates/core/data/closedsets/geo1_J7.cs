[closedset]
source = J7
targets = J15
basis = f1 f2 f3 e
group = graded
conditions:
JJ <= span(e)
