package corpus.fib;

import java.math.BigInteger;
import java.util.ArrayList;
import java.util.List;

public class Sequences {

    public static long fibonacci(int n) {
        if (n <= 1) {
            return n;
        }
        return fibonacci(n - 1) + fibonacci(n - 2);
    }

    public static long fibIterative(int n) {
        long a = 0;
        long b = 1;
        for (int i = 0; i < n; i++) {
            long next = a + b;
            a = b;
            b = next;
        }
        return a;
    }

    public static int[] fibArray(int count) {
        int[] f = new int[Math.max(count, 2)];
        f[0] = 0;
        f[1] = 1;
        for (int i = 2; i < count; i++) {
            f[i] = f[i - 1] + f[i - 2];
        }
        return f;
    }

    static int seq(int k) {
        int x = 0;
        int y = 1;
        while (k-- > 0) {
            int z = x + y;
            x = y;
            y = z;
        }
        return x;
    }

    public List<BigInteger> firstTerms(int count) {
        List<BigInteger> terms = new ArrayList<>();
        BigInteger prev = BigInteger.ZERO;
        BigInteger curr = BigInteger.ONE;
        for (int i = 0; i < count; i++) {
            terms.add(prev);
            BigInteger sum = prev.add(curr);
            prev = curr;
            curr = sum;
        }
        return terms;
    }

    private long[] memo = new long[100];

    public long fibMemo(int n) {
        if (n < 2) {
            return n;
        }
        if (memo[n] != 0) {
            return memo[n];
        }
        memo[n] = fibMemo(n - 1) + fibMemo(n - 2);
        return memo[n];
    }

    public static void printFibonacci(int limit) {
        int first = 0;
        int second = 1;
        while (first <= limit) {
            System.out.print(first + " ");
            int third = first + second;
            first = second;
            second = third;
        }
    }

    public static int fibo(int n) {
        return n < 2 ? n : fibo(n - 1) + fibo(n - 2);
    }

    public static long nthTerm(int n) {
        long[] dp = new long[n + 2];
        dp[1] = 1;
        for (int i = 2; i <= n; i++) {
            dp[i] = dp[i - 1] + dp[i - 2];
        }
        return dp[n];
    }

    public static long golden(int n) {
        double phi = (1 + Math.sqrt(5)) / 2;
        return Math.round(Math.pow(phi, n) / Math.sqrt(5));
    }
}
