import numpy as np, random, json, sys
random.seed(1)
Y = np.roll(np.eye(7,dtype=np.int64),1,axis=1)
Z = np.array([[-3,2,-1,-1,-3,-1,-3],[-2,1,1,3,1,3,3],[-1,-1,-3,-1,-3,-3,2],[-1,-3,-1,-3,-3,2,-1],[-3,-1,-3,-3,2,-1,-1],[1,3,3,-2,1,1,3],[3,3,-2,1,1,3,1]],dtype=np.int64)%11
I=np.eye(7,dtype=np.int64)
gens=[Y,Z]
elems=[I]; seen={I.tobytes()}
i=0
while i<len(elems):
    A=elems[i]; i+=1
    for g in gens:
        B=(A@g)%11; k=B.tobytes()
        if k not in seen: seen.add(k); elems.append(B)
def order(M):
    A=M.copy(); k=1
    while not (A==I).all(): A=(A@M)%11; k+=1
    return k
def closure(gs,cap):
    el=[I]; s={I.tobytes()}; j=0
    while j<len(el):
        A=el[j]; j+=1
        for g in gs:
            B=(A@g)%11; k=B.tobytes()
            if k not in s:
                s.add(k); el.append(B)
                if len(el)>cap: return None
    return el
inv=[e for e in random.sample(elems,3000) if order(e)==2]
o3=[e for e in random.sample(elems,3000) if order(e)==3]
H=None
for t in range(20000):
    a=random.choice(inv); b=random.choice(o3)
    if order((a@b)%11)!=11: continue
    c=closure([a,b],661)
    if c is not None and len(c)==660:
        H=c; print("found",t); break
Hset=H
# right cosets H x: canonical = min bytes over {h x}
def canon(x):
    return min(((h@x)%11).tobytes() for h in Hset)
reps=[I]; idx={canon(I):0}; j=0
while j<len(reps):
    x=reps[j]; j+=1
    for g in gens:
        y=(x@g)%11; k=canon(y)
        if k not in idx: idx[k]=len(reps); reps.append(y)
print(len(reps))
perms=[]
for g in gens:
    perms.append([idx[canon((x@g)%11)]+1 for x in reps])
json.dump(perms,open(sys.argv[1] if len(sys.argv)>1 else "j1perms.json","w"))
