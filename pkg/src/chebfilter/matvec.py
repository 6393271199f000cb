"""Row-partitioned sparse matrix products over a thread pool."""

from concurrent.futures import ThreadPoolExecutor
from types import TracebackType

import numpy as np
from scipy import sparse

from src.errors import InvalidArgumentError


class RowBlockMatvec:
    """Apply a CSR matrix by contiguous row blocks, one block per worker.

    Every row is reduced by the same sequential CSR kernel whatever block it
    lands in, so products are bit-identical for any thread count.
    """

    def __init__(self, matrix: sparse.spmatrix, threads: int = 1) -> None:
        if threads < 1:
            raise InvalidArgumentError(f"threads must be at least 1, got {threads}")
        self.matrix = sparse.csr_matrix(matrix)
        rows = self.matrix.shape[0]
        self.threads = max(1, min(threads, rows))
        bounds = np.linspace(0, rows, self.threads + 1).astype(int)
        self._blocks = [
            (int(lo), int(hi), self.matrix[lo:hi])
            for lo, hi in zip(bounds[:-1], bounds[1:], strict=True)
        ]
        self._executor: ThreadPoolExecutor | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape  # type: ignore[no-any-return]

    def __call__(self, x: np.ndarray) -> np.ndarray:
        if x.shape[0] != self.matrix.shape[1]:
            raise InvalidArgumentError(
                f"operand has {x.shape[0]} rows, "
                f"matrix has {self.matrix.shape[1]} columns"
            )
        if self.threads == 1:
            return np.asarray(self.matrix @ x)

        if self._executor is None:
            self._executor = ThreadPoolExecutor(
                max_workers=self.threads, thread_name_prefix="matvec"
            )
        dtype = np.result_type(self.matrix.dtype, x.dtype)
        out = np.empty((self.matrix.shape[0], *x.shape[1:]), dtype=dtype)

        def run(block: tuple[int, int, sparse.csr_matrix]) -> None:
            lo, hi, rows = block
            out[lo:hi] = rows @ x

        list(self._executor.map(run, self._blocks))
        return out

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __enter__(self) -> "RowBlockMatvec":
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        self.close()
