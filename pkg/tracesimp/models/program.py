from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Set, Tuple

from tracesimp.errors import ForeignStatement, MalformedProgram
from .statement import Statement, StatementRef
from .statement_kind import StatementKind

Thread = Tuple[Statement, ...]

RESERVED_GLOBAL = "tc"

@dataclass(frozen=True)
class Program:
    """
    A concurrent program {T1}...{Tn}: an ordered tuple of non-empty threads.
    Thread i holds statements owned by i with indices 1..n_i.
    """
    threads: Tuple[Thread, ...]

    def __post_init__(self):
        if not self.threads:
            raise MalformedProgram("A program needs at least one thread.")
        for position, thread in enumerate(self.threads, start=1):
            if not thread:
                raise MalformedProgram(f"Thread {position} is empty.")
            for expected_index, stmt in enumerate(thread, start=1):
                if stmt.owner != position or stmt.index != expected_index:
                    raise MalformedProgram(
                        f"Statement t{stmt.owner}#{stmt.index} sits at t{position}#{expected_index}.")
                if stmt.global_name == RESERVED_GLOBAL:
                    raise MalformedProgram(f"'{RESERVED_GLOBAL}' is the reserved trace counter.")

    @classmethod
    def build(cls, rows: Sequence[Sequence[tuple]]) -> "Program":
        """
        Builds a program from plain rows, one row per thread, each statement
        given as (kind,), (kind, global) or (kind, local, global).
        """
        threads = []
        for owner, row in enumerate(rows, start=1):
            thread = []
            for index, spec in enumerate(row, start=1):
                kind = StatementKind(spec[0]) if isinstance(spec[0], str) else spec[0]
                local_name, global_name = None, None
                if len(spec) == 2:
                    global_name = spec[1]
                elif len(spec) == 3:
                    local_name, global_name = spec[1], spec[2]
                thread.append(Statement(kind, owner, index, local_name, global_name))
            threads.append(tuple(thread))
        return cls(tuple(threads))

    @property
    def thread_count(self) -> int:
        return len(self.threads)

    @property
    def statement_count(self) -> int:
        """N_P, the total number of statements."""
        return sum(len(thread) for thread in self.threads)

    def statements(self) -> Iterator[Statement]:
        for thread in self.threads:
            yield from thread

    def refs(self) -> Iterator[StatementRef]:
        for stmt in self.statements():
            yield stmt.ref

    def has_ref(self, ref: StatementRef) -> bool:
        owner, index = ref
        return 1 <= owner <= len(self.threads) and 1 <= index <= len(self.threads[owner - 1])

    def statement(self, ref: StatementRef) -> Statement:
        if not self.has_ref(ref):
            raise ForeignStatement(f"t{ref[0]}#{ref[1]} is not a statement of this program.")
        return self.threads[ref[0] - 1][ref[1] - 1]

    def contains(self, stmt: Statement) -> bool:
        return self.has_ref(stmt.ref) and self.statement(stmt.ref) == stmt

    def global_names(self) -> Set[str]:
        return {s.global_name for s in self.statements() if s.global_name is not None}

    def watchable_globals(self) -> Set[str]:
        """Globals named by some Set0 or Set1, the only ones W may hold."""
        return {s.global_name for s in self.statements() if s.kind in (StatementKind.SET0, StatementKind.SET1)}

    def with_thread(self, statements: Iterable[Statement]) -> "Program":
        """Appends a copy of the given statements as a new thread n+1."""
        owner = len(self.threads) + 1
        thread = tuple(Statement(s.kind, owner, index, s.local_name, s.global_name)
                       for index, s in enumerate(statements, start=1))
        return Program(self.threads + (thread,))
