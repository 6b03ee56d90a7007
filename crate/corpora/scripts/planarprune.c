/* geng PRUNE hook: reject non-planar intermediate graphs.
   Planarity is hereditary, so pruning at every level is sound.
   Build: see geng.sh. */

#include "gtools.h"
#include "planarity.h"

int
planarprune(graph *g, int n, int maxn)
{
    t_ver_sparse_rep V[MAXN];
    t_adjl_sparse_rep A[MAXN*MAXN+1];
    t_dlcl **dfs_tree, **back_edges, **mult_edges;
    t_ver_edge *embed_graph;
    int edge_pos, v, w, c, i, j, k, ne;
    boolean ans;
    setword gi;

    ne = 0;
    for (i = 0; i < n; ++i) ne += POPCOUNT(g[i]);
    ne /= 2;
    if (n >= 3 && ne > 3*n - 6) return 1;
    if (n <= 4) return 0;

    k = 0;
    for (i = 0; i < n; ++i)
    {
        gi = g[i];
        if (gi == 0)
        {
            V[i].first_edge = NIL;
            continue;
        }
        V[i].first_edge = k;
        while (gi)
        {
            TAKEBIT(j, gi);
            A[k].end_vertex = j;
            A[k].next = k + 1;
            ++k;
        }
        A[k-1].next = NIL;
    }

    ans = sparseg_adjl_is_planar(V, n, A, &c, &dfs_tree, &back_edges,
                                 &mult_edges, &embed_graph, &edge_pos, &v, &w);
    sparseg_dlcl_delete(dfs_tree, n);
    sparseg_dlcl_delete(back_edges, n);
    sparseg_dlcl_delete(mult_edges, n);
    embedg_VES_delete(embed_graph, n);
    return ans ? 0 : 1;
}
